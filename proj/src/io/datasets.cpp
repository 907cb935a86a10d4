#include "remeta/io/datasets.hpp"

#include "remeta/error.hpp"

#include <sstream>
#include <string>

namespace remeta::io {

namespace {

// Systolic blood pressure trials: effect estimates and within-study standard errors.
constexpr std::string_view kSbp =
    "y,se,label\n"
    "0.00,0.42347717,Almond (2001)\n"
    "0.10,0.21939179,Cashew (2003)\n"
    "-0.40,0.02551067,Pecan (2004)\n"
    "-0.80,0.19898325,Macadamia (2007)\n"
    "-0.63,0.30102594,Pistachio (2008)\n"
    "0.22,0.30102594,Hazelnut (2011)\n"
    "-0.34,0.07142988,Coconut (2012)\n"
    "-0.51,0.10204269,Walnut (2014)\n"
    "0.03,0.12245123,Chestnut (2015)\n"
    "-0.81,0.30102594,Peanut (2017)\n";

// Thirteen placebo-controlled cisapride trials (events/patients per arm).
constexpr std::string_view kCisapride =
    "m1,n1,m2,n2,label\n"
    "15,16,9,16,Creytens\n"
    "12,16,1,16,Milo\n"
    "29,34,18,34,Francois and De Nutte\n"
    "42,56,31,56,Deruyttere et al.\n"
    "14,22,6,22,Hannon\n"
    "44,54,17,55,Roesch\n"
    "14,17,7,15,De Nutte et al.\n"
    "29,58,23,58,Hausken and Bestad\n"
    "10,14,3,15,Chung\n"
    "17,26,6,27,Van Outryve et al.\n"
    "38,44,12,45,Al-Quorain et al.\n"
    "19,29,22,30,Kellow et al.\n"
    "21,38,19,38,Yeoh et al.\n";

}  // namespace

std::vector<std::string_view> dataset_names() { return {"sbp", "cisapride"}; }

std::optional<std::string_view> dataset_csv(std::string_view name) {
    if (name == "sbp") return kSbp;
    if (name == "cisapride") return kCisapride;
    return std::nullopt;
}

StudyData load_dataset(std::string_view name) {
    const auto text = dataset_csv(name);
    if (!text) throw DomainError("unknown data set '" + std::string(name) + "' (available: sbp, cisapride)");
    std::istringstream in{std::string(*text)};
    return parse_studies(in, name);
}

}  // namespace remeta::io
