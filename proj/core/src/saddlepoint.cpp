#include "ebkit/saddlepoint.hpp"

#include <cmath>
#include <limits>
#include <map>

#include "ebkit/errors.hpp"
#include "ebkit/numeric.hpp"

namespace ebkit {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

// Kummer's confluent hypergeometric 1F1(a; b; t), summed with positive terms
// (the t < 0 case goes through the Kummer transform e^t 1F1(b-a; b; -t)).
double hyp1f1(double a, double b, double t) {
    if (t < 0.0) return std::exp(t) * hyp1f1(b - a, b, -t);
    double term = 1.0;
    double sum = 1.0;
    for (int k = 0; k < 10000; ++k) {
        term *= (a + k) * t / ((b + k) * (k + 1));
        sum += term;
        if (term < 1e-17 * sum) break;
    }
    return sum;
}

double eval_or_inf(const std::function<double(double)>& f, double t) {
    const double v = f(t);
    return std::isnan(v) ? std::numeric_limits<double>::infinity() : v;
}

}  // namespace

double solve_saddle(const CgfModel& model, double x, int* iterations) {
    // Bracket the root of K'(t) = x; K' is increasing on the domain.
    double t0 = 0.0;
    if (!(model.t_min < 0.0 && 0.0 < model.t_max)) {
        t0 = 0.5 * (model.t_min + model.t_max);
    }
    double lo = t0, hi = t0;
    double glo = eval_or_inf(model.K1, lo) - x;
    double ghi = glo;

    const auto expand = [&](bool upward) {
        double* edge = upward ? &hi : &lo;
        double* g = upward ? &ghi : &glo;
        const double bound = upward ? model.t_max : model.t_min;
        double step = 1.0;
        for (int k = 0; k < 200; ++k) {
            double cand;
            if (std::fabs(bound) >= 1e307) {
                cand = *edge + (upward ? step : -step);
                step *= 2.0;
            } else {
                cand = 0.5 * (*edge + bound);  // geometric approach to a finite pole
            }
            if (!(cand > model.t_min && cand < model.t_max)) break;
            if (cand == *edge) break;
            *edge = cand;
            *g = eval_or_inf(model.K1, cand) - x;
            if ((upward && *g >= 0.0) || (!upward && *g <= 0.0)) return true;
        }
        return false;
    };

    if (glo > 0.0) {
        if (!expand(false)) {
            throw_error("OutOfRange", "x below the range of K' for model " + model.name);
        }
        hi = t0;
        ghi = eval_or_inf(model.K1, hi) - x;
    } else if (ghi < 0.0) {
        if (!expand(true)) {
            throw_error("OutOfRange", "x above the range of K' for model " + model.name);
        }
        lo = t0;
        glo = eval_or_inf(model.K1, lo) - x;
    }

    const double tol = 1e-11 * std::max(1.0, std::fabs(x));
    double t = 0.5 * (lo + hi);
    if (glo == 0.0) t = lo;
    if (ghi == 0.0) t = hi;

    for (int it = 1; it <= 100; ++it) {
        const double g = model.K1(t) - x;
        if (std::fabs(g) < tol) {
            if (iterations != nullptr) *iterations = it;
            return t;
        }
        if (g > 0.0) {
            hi = t;
        } else {
            lo = t;
        }
        const double k2 = model.K2(t);
        double next = t - g / k2;
        if (!std::isfinite(next) || !(next > lo && next < hi)) {
            next = 0.5 * (lo + hi);
        }
        if (next == t) {
            // interval exhausted at machine precision
            if (iterations != nullptr) *iterations = it;
            return t;
        }
        t = next;
    }
    throw_error("NoConvergence", "saddlepoint solve did not converge for model " + model.name);
}

SaddleResult saddle_density(const CgfModel& model, double x) {
    SaddleResult result;
    result.t_hat = solve_saddle(model, x, &result.iterations);
    const double k2 = model.K2(result.t_hat);
    result.density =
        std::exp(model.K(result.t_hat) - result.t_hat * x) / std::sqrt(2.0 * kPi * k2);
    return result;
}

double generalized_tweedie_term(const CgfModel& model, double x) {
    if (!model.correction_available) {
        throw_error("NotAvailable",
                    "generalized Tweedie correction is undefined for model " + model.name);
    }
    const double t_hat = solve_saddle(model, x);
    const double k2 = model.K2(t_hat);
    const double k3 = model.K3(t_hat);
    return t_hat + 0.5 * (k3 / k2) / k2;
}

CgfModel make_normal_cgf(double sigma2) {
    if (!(sigma2 > 0.0)) throw_error("OutOfRange", "normal needs sigma2 > 0");
    CgfModel m;
    m.name = "normal";
    m.params = {{"sigma2", sigma2}};
    m.K = [sigma2](double t) { return 0.5 * sigma2 * t * t; };
    m.K1 = [sigma2](double t) { return sigma2 * t; };
    m.K2 = [sigma2](double) { return sigma2; };
    m.K3 = [](double) { return 0.0; };
    m.exact_pdf = [sigma2](double x) { return normal_pdf(x, 0.0, sigma2); };
    return m;
}

CgfModel make_laplace_cgf(double mu, double b) {
    if (!(b > 0.0)) throw_error("OutOfRange", "laplace needs b > 0");
    CgfModel m;
    m.name = "laplace";
    m.params = {{"mu", mu}, {"b", b}};
    const double b2 = b * b;
    m.K = [mu, b2](double t) { return mu * t - std::log(1.0 - b2 * t * t); };
    m.K1 = [mu, b2](double t) { return mu + 2.0 * b2 * t / (1.0 - b2 * t * t); };
    m.K2 = [b2](double t) {
        const double d = 1.0 - b2 * t * t;
        return 2.0 * b2 * (1.0 + b2 * t * t) / (d * d);
    };
    m.K3 = [b2](double t) {
        const double d = 1.0 - b2 * t * t;
        return 4.0 * b2 * b2 * t * (3.0 + b2 * t * t) / (d * d * d);
    };
    m.t_min = -1.0 / b;
    m.t_max = 1.0 / b;
    m.exponential_family = false;
    m.exact_pdf = [mu, b](double x) { return 0.5 / b * std::exp(-std::fabs(x - mu) / b); };
    return m;
}

CgfModel make_gamma_cgf(double alpha, double beta) {
    if (!(alpha > 0.0 && beta > 0.0)) throw_error("OutOfRange", "gamma needs alpha, beta > 0");
    CgfModel m;
    m.name = "gamma";
    m.params = {{"alpha", alpha}, {"beta", beta}};
    m.K = [alpha, beta](double t) { return -alpha * std::log(1.0 - t / beta); };
    m.K1 = [alpha, beta](double t) { return alpha / (beta - t); };
    m.K2 = [alpha, beta](double t) { return alpha / ((beta - t) * (beta - t)); };
    m.K3 = [alpha, beta](double t) {
        const double d = beta - t;
        return 2.0 * alpha / (d * d * d);
    };
    m.t_max = beta;
    m.exact_pdf = [alpha, beta](double x) {
        if (!(x > 0.0)) return 0.0;
        return std::exp(alpha * std::log(beta) + (alpha - 1.0) * std::log(x) - beta * x -
                        std::lgamma(alpha));
    };
    return m;
}

CgfModel make_chi_square_cgf(double k) {
    if (!(k > 0.0)) throw_error("OutOfRange", "chi-square needs k > 0");
    CgfModel m;
    m.name = "chi_square";
    m.params = {{"k", k}};
    m.K = [k](double t) { return -0.5 * k * std::log(1.0 - 2.0 * t); };
    m.K1 = [k](double t) { return k / (1.0 - 2.0 * t); };
    m.K2 = [k](double t) {
        const double d = 1.0 - 2.0 * t;
        return 2.0 * k / (d * d);
    };
    m.K3 = [k](double t) {
        const double d = 1.0 - 2.0 * t;
        return 8.0 * k / (d * d * d);
    };
    m.t_max = 0.5;
    m.exact_pdf = [k](double x) {
        if (!(x > 0.0)) return 0.0;
        return std::exp((0.5 * k - 1.0) * std::log(x) - 0.5 * x - 0.5 * k * std::log(2.0) -
                        std::lgamma(0.5 * k));
    };
    return m;
}

CgfModel make_exponential_cgf(double lambda) {
    if (!(lambda > 0.0)) throw_error("OutOfRange", "exponential needs lambda > 0");
    CgfModel m;
    m.name = "exponential";
    m.params = {{"lambda", lambda}};
    m.K = [lambda](double t) { return std::log(lambda / (lambda - t)); };
    m.K1 = [lambda](double t) { return 1.0 / (lambda - t); };
    m.K2 = [lambda](double t) { return 1.0 / ((lambda - t) * (lambda - t)); };
    m.K3 = [lambda](double t) {
        const double d = lambda - t;
        return 2.0 / (d * d * d);
    };
    m.t_max = lambda;
    m.exact_pdf = [lambda](double x) { return x > 0.0 ? lambda * std::exp(-lambda * x) : 0.0; };
    return m;
}

CgfModel make_poisson_cgf(double lambda) {
    if (!(lambda > 0.0)) throw_error("OutOfRange", "poisson needs lambda > 0");
    CgfModel m;
    m.name = "poisson";
    m.params = {{"lambda", lambda}};
    m.K = [lambda](double t) { return lambda * (std::exp(t) - 1.0); };
    m.K1 = [lambda](double t) { return lambda * std::exp(t); };
    m.K2 = m.K1;
    m.K3 = m.K1;
    m.discrete = true;
    m.exact_pdf = [lambda](double x) {
        if (x < 0.0 || x != std::floor(x)) return 0.0;
        return std::exp(x * std::log(lambda) - lambda - std::lgamma(x + 1.0));
    };
    return m;
}

CgfModel make_binomial_cgf(int n, double p) {
    if (n < 1 || !(p > 0.0 && p < 1.0)) {
        throw_error("OutOfRange", "binomial needs n >= 1 and p in (0, 1)");
    }
    CgfModel m;
    m.name = "binomial";
    m.params = {{"n", static_cast<double>(n)}, {"p", p}};
    const double dn = static_cast<double>(n);
    m.K = [dn, p](double t) { return dn * std::log1p(p * (std::exp(t) - 1.0)); };
    m.K1 = [dn, p](double t) {
        const double e = p * std::exp(t);
        return dn * e / (1.0 - p + e);
    };
    m.K2 = [dn, p](double t) {
        const double e = p * std::exp(t);
        const double d = 1.0 - p + e;
        return dn * e * (1.0 - p) / (d * d);
    };
    m.K3 = [dn, p](double t) {
        const double e = p * std::exp(t);
        const double q = 1.0 - p;
        const double d = q + e;
        return dn * e * q * (q - e) / (d * d * d);
    };
    m.discrete = true;
    m.correction_available = false;
    m.exact_pdf = [dn, p](double x) {
        if (x < 0.0 || x > dn || x != std::floor(x)) return 0.0;
        return std::exp(std::lgamma(dn + 1.0) - std::lgamma(x + 1.0) - std::lgamma(dn - x + 1.0) +
                        x * std::log(p) + (dn - x) * std::log1p(-p));
    };
    return m;
}

CgfModel make_geometric_cgf(double p) {
    if (!(p > 0.0 && p < 1.0)) throw_error("OutOfRange", "geometric needs p in (0, 1)");
    CgfModel m;
    m.name = "geometric";
    m.params = {{"p", p}};
    const double q = 1.0 - p;
    m.K = [p, q](double t) { return t + std::log(p) - std::log(1.0 - q * std::exp(t)); };
    m.K1 = [q](double t) { return 1.0 / (1.0 - q * std::exp(t)); };
    m.K2 = [q](double t) {
        const double e = q * std::exp(t);
        const double d = 1.0 - e;
        return e / (d * d);
    };
    m.K3 = [q](double t) {
        const double e = q * std::exp(t);
        const double d = 1.0 - e;
        return e * (1.0 + e) / (d * d * d);
    };
    m.t_max = -std::log(q);
    m.discrete = true;
    m.exact_pdf = [p, q](double x) {
        if (x < 1.0 || x != std::floor(x)) return 0.0;
        return std::exp((x - 1.0) * std::log(q)) * p;
    };
    return m;
}

CgfModel make_beta_cgf(double alpha, double beta) {
    if (!(alpha > 0.0 && beta > 0.0)) throw_error("OutOfRange", "beta needs alpha, beta > 0");
    CgfModel m;
    m.name = "beta";
    m.params = {{"alpha", alpha}, {"beta", beta}};
    const double a = alpha, b = alpha + beta;
    // MGF is the confluent hypergeometric series 1F1(alpha; alpha+beta; t);
    // there is no closed-form inverse of K', so the correction stays off.
    const auto M0 = [a, b](double t) { return hyp1f1(a, b, t); };
    const auto M1 = [a, b](double t) { return a / b * hyp1f1(a + 1.0, b + 1.0, t); };
    const auto M2 = [a, b](double t) {
        return a * (a + 1.0) / (b * (b + 1.0)) * hyp1f1(a + 2.0, b + 2.0, t);
    };
    const auto M3 = [a, b](double t) {
        return a * (a + 1.0) * (a + 2.0) / (b * (b + 1.0) * (b + 2.0)) *
               hyp1f1(a + 3.0, b + 3.0, t);
    };
    m.K = [M0](double t) { return std::log(M0(t)); };
    m.K1 = [M0, M1](double t) { return M1(t) / M0(t); };
    m.K2 = [M0, M1, M2](double t) {
        const double r1 = M1(t) / M0(t);
        return M2(t) / M0(t) - r1 * r1;
    };
    m.K3 = [M0, M1, M2, M3](double t) {
        const double r1 = M1(t) / M0(t);
        const double r2 = M2(t) / M0(t);
        return M3(t) / M0(t) - 3.0 * r2 * r1 + 2.0 * r1 * r1 * r1;
    };
    m.t_min = -650.0;
    m.t_max = 650.0;
    m.correction_available = false;
    m.exact_pdf = [alpha, beta](double x) {
        if (!(x > 0.0 && x < 1.0)) return 0.0;
        return std::exp((alpha - 1.0) * std::log(x) + (beta - 1.0) * std::log1p(-x) +
                        std::lgamma(alpha + beta) - std::lgamma(alpha) - std::lgamma(beta));
    };
    return m;
}

CgfModel make_cgf(const std::string& name,
                  const std::vector<std::pair<std::string, double>>& params) {
    std::map<std::string, double> kv(params.begin(), params.end());
    const auto get = [&kv](const std::string& key, double fallback) {
        const auto it = kv.find(key);
        return it == kv.end() ? fallback : it->second;
    };
    if (name == "normal") return make_normal_cgf(get("sigma2", 1.0));
    if (name == "laplace") return make_laplace_cgf(get("mu", 0.0), get("b", 1.0));
    if (name == "gamma") return make_gamma_cgf(get("alpha", 2.0), get("beta", 1.0));
    if (name == "chi_square" || name == "chi2") return make_chi_square_cgf(get("k", 4.0));
    if (name == "exponential") return make_exponential_cgf(get("lambda", 1.0));
    if (name == "poisson") return make_poisson_cgf(get("lambda", 2.0));
    if (name == "binomial") {
        return make_binomial_cgf(static_cast<int>(get("n", 10.0)), get("p", 0.5));
    }
    if (name == "geometric") return make_geometric_cgf(get("p", 0.5));
    if (name == "beta") return make_beta_cgf(get("alpha", 2.0), get("beta", 2.0));
    throw_error("OutOfRange", "unknown CGF family: " + name);
}

std::vector<CgfModel> builtin_models() {
    return {make_normal_cgf(1.0),      make_laplace_cgf(0.0, 1.0), make_gamma_cgf(2.0, 1.0),
            make_chi_square_cgf(4.0),  make_exponential_cgf(1.0),  make_poisson_cgf(2.0),
            make_binomial_cgf(10, 0.5), make_geometric_cgf(0.5),   make_beta_cgf(2.0, 2.0)};
}

}  // namespace ebkit
