#include "ogtt/diagnosis.hpp"

#include <algorithm>
#include <cmath>

namespace ogtt {

const char* to_string(DiseaseClass c) {
    switch (c) {
        case DiseaseClass::Normal: return "normal";
        case DiseaseClass::ImpairedGlucose: return "impaired_glucose";
        case DiseaseClass::Diabetes: return "diabetes";
    }
    return "?";
}

DiseaseClass disease_class_from_string(const std::string& s) {
    if (s == "normal") return DiseaseClass::Normal;
    if (s == "impaired_glucose") return DiseaseClass::ImpairedGlucose;
    if (s == "diabetes") return DiseaseClass::Diabetes;
    throw std::invalid_argument("unknown disease class: " + s);
}

namespace {
long rounded(double mg_dl) { return std::lround(mg_dl); }
}  // namespace

DiseaseClass classify_fasting(double mg_dl) {
    const long v = rounded(mg_dl);
    if (v <= 99) return DiseaseClass::Normal;
    if (v <= 125) return DiseaseClass::ImpairedGlucose;
    return DiseaseClass::Diabetes;
}

DiseaseClass classify_1h(double mg_dl) {
    // The 1-hour criterion distinguishes normal from impaired only.
    return rounded(mg_dl) <= 154 ? DiseaseClass::Normal
                                 : DiseaseClass::ImpairedGlucose;
}

DiseaseClass classify_2h(double mg_dl) {
    const long v = rounded(mg_dl);
    if (v <= 139) return DiseaseClass::Normal;
    if (v <= 199) return DiseaseClass::ImpairedGlucose;
    return DiseaseClass::Diabetes;
}

DiseaseClass classify_ogtt(const std::map<int, double>& glucose_by_timepoint) {
    bool any = false;
    DiseaseClass worst = DiseaseClass::Normal;
    auto consider = [&](int timepoint, DiseaseClass (*criterion)(double)) {
        auto it = glucose_by_timepoint.find(timepoint);
        if (it == glucose_by_timepoint.end()) return;
        any = true;
        worst = std::max(worst, criterion(it->second));
    };
    consider(0, classify_fasting);
    consider(60, classify_1h);
    consider(120, classify_2h);
    if (!any) throw NoCriterionTimepoints();
    return worst;
}

DiseaseClass classify_hba1c(double percent) {
    if (!(percent > 0.0) || !(percent < 20.0)) throw ImplausibleValue(percent);
    if (percent < 5.7) return DiseaseClass::Normal;
    if (percent < 6.5) return DiseaseClass::ImpairedGlucose;
    return DiseaseClass::Diabetes;
}

}  // namespace ogtt
