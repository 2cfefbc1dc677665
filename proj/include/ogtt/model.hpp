#pragma once

#include <array>
#include <string>

#include "ogtt/config.hpp"

namespace ogtt {

// Glucose-insulin dynamics. Unit convention, fixed project-wide:
// glucose G in mg/dL, insulin I in uU/mL, time in minutes.
// The estimated secretion capacity sigma is in uU/(mg beta-cell * min);
// the estimated sensitivity S_I is in (U/L)^-1 min^-1. Both enter the
// equations through exact unit conversions declared in the nominal config.

struct Sigmoid {
    double max = 1.0;
    double slope = 1.0;
    double midpoint = 0.0;

    double operator()(double x) const;
};

struct MealParams {
    double dose_g = 75.0;             // oral glucose dose
    double k_gut = 0.025;             // gut emptying/absorption rate, 1/min
    double conversion_mg_dl_per_g = 5.88;  // concentration equivalent per gram
};

struct HgpParams {
    double max = 0.5;      // insulin-suppressible production, mg/dL/min
    double half_i = 1000.0;  // insulin giving half suppression, uU/mL
    double floor = 1.1;    // insulin-independent production, mg/dL/min
};

struct ModelParams {
    double S_I = 0.8;    // insulin sensitivity, (U/L)^-1 min^-1 (estimated)
    double E_GO = 0.01;  // insulin-independent disposal, 1/min
    double k = 0.15;     // insulin removal, 1/min
    double V = 13.0;     // insulin distribution volume, L

    double alpha_ISR = 0.6;   // secretion Hill midpoint on M + gamma
    double k_ISR = 4.0;       // secretion Hill exponent
    double alpha_M = 180.0;   // metabolism Hill midpoint, mg/dL
    double k_M = 2.5;         // metabolism Hill exponent

    double tau_gamma = 1440.0;   // min
    double tau_sigma = 50000.0;  // min
    double tau_beta = 60000.0;   // min

    Sigmoid gamma_inf{0.35, 0.03, 140.0};        // of G
    Sigmoid sigma_inf{2400.0, 0.01, 20.0};       // of ISR - metab_weight * M
    double sigma_inf_metab_weight = 25.0;
    Sigmoid prolif{0.05, 0.1, 25.0};             // of ISR
    Sigmoid apoptosis{0.05, 8.0, 0.3};           // of M

    HgpParams hgp_params;
    MealParams meal;

    // Slow-state values at the start of a test.
    double gamma_rest = 0.064;
    double beta_rest = 1000.0;  // mg
    double sigma_rest = 1200.0;

    std::string version = "1";

    void validate() const;

    static ModelParams from_json(const json& doc);
    json to_json() const;
};

// The five dynamical variables of the model plus the meal subsystem.
struct ModelState {
    double G = 90.0;       // glucose, mg/dL
    double I = 10.0;       // plasma insulin, uU/mL
    double gamma = 0.064;  // K(ATP)-channel secretion shift
    double sigma = 1200.0; // secretion capacity
    double beta = 1000.0;  // beta-cell mass, mg
    double meal_gut = 0.0; // remaining gut glucose, mg/dL-equivalent

    static constexpr std::size_t kDim = 6;
    std::array<double, kDim> to_array() const {
        return {G, I, gamma, sigma, beta, meal_gut};
    }
    static ModelState from_array(const std::array<double, kDim>& a) {
        return {a[0], a[1], a[2], a[3], a[4], a[5]};
    }
};

// Beta-cell metabolic activity M(G), a sigmoidally increasing function of
// glucose, bounded by 1.
double metabolism(double glucose, const ModelParams& p);

// Insulin secretion rate per unit beta-cell mass, in sigma's units.
// Saturates at sigma as the secretion drive M + gamma grows.
double isr(double metab, double gamma, double sigma, const ModelParams& p);

// Glucose appearance rate at time t (minutes) after an oral dose at t = 0,
// for the single-compartment gut: rate = k_gut * dose * conversion * e^(-k_gut t).
// Integrates to dose * conversion over [0, inf).
double meal_rate(double t, const ModelParams& p);

// Hepatic glucose production, non-increasing in insulin.
double hgp(double insulin, const ModelParams& p);

// Right-hand side of the full system. Pure; throws std::invalid_argument on
// non-finite state components.
ModelState rhs(double t, const ModelState& state, const ModelParams& p);

// Fasting steady state of the glucose and insulin equations (no meal) for
// the given (sigma, S_I), with gamma and beta pinned at their rest values.
// Solved by bisection on G; deterministic.
struct FastingState {
    double glucose;
    double insulin;
};
FastingState fasting_steady_state(double sigma, double S_I, const ModelParams& p);

// Initial condition for an OGTT: fasting steady state with the oral dose
// loaded into the gut compartment.
ModelState ogtt_initial_state(double sigma, double S_I, const ModelParams& p);

}  // namespace ogtt
