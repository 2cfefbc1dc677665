#pragma once

#include <map>
#include <stdexcept>
#include <string>

namespace ogtt {

// Ordered worst-last so the disjunctive "any criterion" rule is a max.
enum class DiseaseClass { Normal = 0, ImpairedGlucose = 1, Diabetes = 2 };

const char* to_string(DiseaseClass c);
DiseaseClass disease_class_from_string(const std::string& s);

struct NoCriterionTimepoints : std::runtime_error {
    NoCriterionTimepoints()
        : std::runtime_error("no fasting/1h/2h glucose to classify") {}
};
struct ImplausibleValue : std::runtime_error {
    explicit ImplausibleValue(double v)
        : std::runtime_error("HbA1c outside sanity range: " + std::to_string(v)) {}
};

// OGTT classification over the criterion timepoints (fasting, 60, 120 min).
// Values are rounded to whole mg/dL before threshold comparison, matching
// clinical lab reporting; other timepoints are ignored. Each available
// criterion is classified independently and the worst class is returned.
DiseaseClass classify_ogtt(const std::map<int, double>& glucose_by_timepoint);

// Per-timepoint criteria, exposed for tests and reporting.
DiseaseClass classify_fasting(double mg_dl);
DiseaseClass classify_1h(double mg_dl);   // at most ImpairedGlucose
DiseaseClass classify_2h(double mg_dl);

// HbA1c classification: below 5.7% normal, 5.7-6.4% impaired, 6.5%+ diabetes.
DiseaseClass classify_hba1c(double percent);

}  // namespace ogtt
