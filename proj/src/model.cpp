#include "ogtt/model.hpp"

#include <cmath>
#include <stdexcept>

namespace ogtt {

namespace {
// Exact unit conversions (not tunable): insulin state is uU/mL.
// (beta [mg] / V [L]) * ISR [uU/mg/min] yields uU/(L min) = 1e-3 uU/(mL min).
constexpr double kPerLiterToPerMl = 1e-3;
// S_I is declared per (U/L); I [uU/mL] = 1e-3 U/L.
constexpr double kMicroUnitPerMlToUnitPerL = 1e-3;
}  // namespace

double Sigmoid::operator()(double x) const {
    return max / (1.0 + std::exp(-slope * (x - midpoint)));
}

double metabolism(double glucose, const ModelParams& p) {
    const double g = glucose > 0.0 ? glucose : 0.0;
    if (g == 0.0) return 0.0;
    const double gk = std::pow(g, p.k_M);
    return gk / (std::pow(p.alpha_M, p.k_M) + gk);
}

double isr(double metab, double gamma, double sigma, const ModelParams& p) {
    const double drive = metab + gamma > 0.0 ? metab + gamma : 0.0;
    if (drive == 0.0) return 0.0;
    const double dk = std::pow(drive, p.k_ISR);
    return sigma * dk / (std::pow(p.alpha_ISR, p.k_ISR) + dk);
}

double meal_rate(double t, const ModelParams& p) {
    if (t < 0.0) return 0.0;
    const double load = p.meal.dose_g * p.meal.conversion_mg_dl_per_g;
    return p.meal.k_gut * load * std::exp(-p.meal.k_gut * t);
}

double hgp(double insulin, const ModelParams& p) {
    const double i = insulin > 0.0 ? insulin : 0.0;
    return p.hgp_params.max * p.hgp_params.half_i / (p.hgp_params.half_i + i) +
           p.hgp_params.floor;
}

ModelState rhs(double /*t*/, const ModelState& s, const ModelParams& p) {
    for (double v : s.to_array())
        if (!std::isfinite(v)) throw std::invalid_argument("rhs: non-finite state");

    const double M = metabolism(s.G, p);
    const double secretion = isr(M, s.gamma, s.sigma, p);
    const double meal = p.meal.k_gut * s.meal_gut;

    ModelState d;
    d.G = meal + hgp(s.I, p) -
          (p.E_GO + p.S_I * kMicroUnitPerMlToUnitPerL * s.I) * s.G;
    d.I = (s.beta / p.V) * secretion * kPerLiterToPerMl - p.k * s.I;
    d.gamma = (p.gamma_inf(s.G) - s.gamma) / p.tau_gamma;
    d.sigma = (p.sigma_inf(secretion - p.sigma_inf_metab_weight * M) - s.sigma) /
              p.tau_sigma;
    d.beta = (p.prolif(secretion) - p.apoptosis(M)) * s.beta / p.tau_beta;
    d.meal_gut = -p.meal.k_gut * s.meal_gut;
    return d;
}

FastingState fasting_steady_state(double sigma, double S_I, const ModelParams& p) {
    if (!(std::isfinite(sigma) && std::isfinite(S_I)) || sigma < 0.0 || S_I < 0.0)
        throw std::invalid_argument("fasting_steady_state: bad (sigma, S_I)");

    // At fixed G the insulin equation equilibrates directly; substitute into
    // the glucose balance and bisect on G.
    auto insulin_at = [&](double g) {
        const double secretion = isr(metabolism(g, p), p.gamma_rest, sigma, p);
        return (p.beta_rest / p.V) * secretion * kPerLiterToPerMl / p.k;
    };
    auto balance = [&](double g) {
        const double i = insulin_at(g);
        return hgp(i, p) - (p.E_GO + S_I * kMicroUnitPerMlToUnitPerL * i) * g;
    };

    double lo = 1e-6, hi = 2000.0;
    if (balance(lo) <= 0.0 || balance(hi) >= 0.0)
        throw std::domain_error("fasting_steady_state: no bracket in (0, 2000] mg/dL");
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        (balance(mid) > 0.0 ? lo : hi) = mid;
    }
    const double g = 0.5 * (lo + hi);
    return {g, insulin_at(g)};
}

ModelState ogtt_initial_state(double sigma, double S_I, const ModelParams& p) {
    const FastingState fs = fasting_steady_state(sigma, S_I, p);
    ModelState s;
    s.G = fs.glucose;
    s.I = fs.insulin;
    s.gamma = p.gamma_rest;
    s.sigma = sigma;
    s.beta = p.beta_rest;
    s.meal_gut = p.meal.dose_g * p.meal.conversion_mg_dl_per_g;
    return s;
}

void ModelParams::validate() const {
    auto positive = [](double v, const char* name) {
        if (!(v > 0.0))
            throw std::invalid_argument(std::string("ModelParams: ") + name +
                                        " must be > 0");
    };
    positive(E_GO, "E_GO");
    positive(k, "k");
    positive(V, "V");
    positive(alpha_ISR, "alpha_ISR");
    positive(alpha_M, "alpha_M");
    positive(tau_gamma, "tau_gamma");
    positive(tau_sigma, "tau_sigma");
    positive(tau_beta, "tau_beta");
    positive(meal.k_gut, "meal.k_gut");
    positive(meal.conversion_mg_dl_per_g, "meal.conversion");
    positive(beta_rest, "beta_rest");
    if (k_ISR < 1.0 || k_M < 1.0)
        throw std::invalid_argument("ModelParams: Hill exponents must be >= 1");
    if (meal.dose_g < 0.0 || S_I < 0.0 || sigma_rest < 0.0 || gamma_rest < 0.0 ||
        hgp_params.max < 0.0 || hgp_params.floor < 0.0)
        throw std::invalid_argument("ModelParams: negative coefficient");
    positive(hgp_params.half_i, "hgp.half_i");
}

namespace {

Sigmoid sigmoid_from(const json& j) {
    return {j.at("max").get<double>(), j.at("slope").get<double>(),
            j.at("midpoint").get<double>()};
}

json sigmoid_to(const Sigmoid& s) {
    return {{"max", s.max}, {"slope", s.slope}, {"midpoint", s.midpoint}};
}

}  // namespace

ModelParams ModelParams::from_json(const json& doc) {
    ModelParams p;
    p.version = doc.at("version").get<std::string>();
    p.S_I = doc.value("S_I", p.S_I);
    p.E_GO = doc.at("E_GO").get<double>();
    p.k = doc.at("k").get<double>();
    p.V = doc.at("V").get<double>();
    p.alpha_ISR = doc.at("alpha_ISR").get<double>();
    p.k_ISR = doc.at("k_ISR").get<double>();
    p.alpha_M = doc.at("alpha_M").get<double>();
    p.k_M = doc.at("k_M").get<double>();
    p.tau_gamma = doc.at("tau_gamma").get<double>();
    p.tau_sigma = doc.at("tau_sigma").get<double>();
    p.tau_beta = doc.at("tau_beta").get<double>();
    p.gamma_inf = sigmoid_from(doc.at("gamma_inf"));
    p.sigma_inf = sigmoid_from(doc.at("sigma_inf"));
    p.sigma_inf_metab_weight = doc.at("sigma_inf").at("metab_weight").get<double>();
    p.prolif = sigmoid_from(doc.at("prolif"));
    p.apoptosis = sigmoid_from(doc.at("apoptosis"));
    p.hgp_params = {doc.at("hgp").at("max").get<double>(),
                    doc.at("hgp").at("half_i").get<double>(),
                    doc.at("hgp").at("floor").get<double>()};
    p.meal = {doc.at("meal").at("dose_g").get<double>(),
              doc.at("meal").at("k_gut").get<double>(),
              doc.at("meal").at("conversion_mg_dl_per_g").get<double>()};
    p.gamma_rest = doc.at("rest").at("gamma").get<double>();
    p.beta_rest = doc.at("rest").at("beta_mg").get<double>();
    p.sigma_rest = doc.at("rest").at("sigma").get<double>();
    p.validate();
    return p;
}

json ModelParams::to_json() const {
    json sig = sigmoid_to(sigma_inf);
    sig["metab_weight"] = sigma_inf_metab_weight;
    return json{
        {"version", version},
        {"units",
         {{"glucose", "mg/dL"},
          {"insulin", "uU/mL"},
          {"time", "min"},
          {"sigma", "uU/mg/min"},
          {"si", "per (U/L) per min"}}},
        {"S_I", S_I},
        {"E_GO", E_GO},
        {"k", k},
        {"V", V},
        {"alpha_ISR", alpha_ISR},
        {"k_ISR", k_ISR},
        {"alpha_M", alpha_M},
        {"k_M", k_M},
        {"tau_gamma", tau_gamma},
        {"tau_sigma", tau_sigma},
        {"tau_beta", tau_beta},
        {"gamma_inf", sigmoid_to(gamma_inf)},
        {"sigma_inf", sig},
        {"prolif", sigmoid_to(prolif)},
        {"apoptosis", sigmoid_to(apoptosis)},
        {"hgp",
         {{"max", hgp_params.max},
          {"half_i", hgp_params.half_i},
          {"floor", hgp_params.floor}}},
        {"meal",
         {{"dose_g", meal.dose_g},
          {"k_gut", meal.k_gut},
          {"conversion_mg_dl_per_g", meal.conversion_mg_dl_per_g}}},
        {"rest",
         {{"gamma", gamma_rest}, {"beta_mg", beta_rest}, {"sigma", sigma_rest}}}};
}

}  // namespace ogtt
