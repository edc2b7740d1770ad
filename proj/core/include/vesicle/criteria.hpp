#pragma once

#include <optional>
#include <string>
#include <vector>

namespace vesicle {

/// Which blow-up criterion an accumulator tracks.
enum class CriterionKind {
  SerrinU,      // integral of ||u||_{Lp}^q, 3/p + 2/q = 1
  SerrinGrad,   // integral of ||grad u||_{Lp}^q, 3/p + 2/q = 2
  Bkm,          // integral of ||omega||_{Linf}
  Besov0,       // integral of ||omega||_{B0}
  LogBesov0,    // logarithmically damped B0 integrand
  LogBesovM1,   // logarithmically damped squared B^{-1} integrand
};

std::string criterion_kind_name(CriterionKind kind);

/// Running trapezoid integral of one criterion integrand.
struct CriterionAccumulator {
  CriterionKind kind;
  double p = 0.0;  // Serrin kinds only
  double q = 0.0;
  double integral = 0.0;
  double sup_integrand = 0.0;
  double last_t = 0.0;
  double last_integrand = 0.0;
  bool started = false;
  std::optional<double> threshold;

  static CriterionAccumulator make(CriterionKind kind, std::optional<double> threshold = {});
  /// Serrin accumulators validate the scaling identity at construction.
  static CriterionAccumulator serrin_u(double p, double q, std::optional<double> threshold = {});
  static CriterionAccumulator serrin_grad(double p, double q,
                                          std::optional<double> threshold = {});

  /// Column label, e.g. "int_bkm" or "int_serrin_u_p4_q8".
  std::string label() const;
};

/// b0 / sqrt(1 + ln(e + b0)).
double integrand_log_besov0(double b0);

/// bm1^2 / (1 + ln(e + bm1)).
double integrand_log_besov_m1(double bm1);

/// Identity on nonnegative input.
double integrand_bkm(double linf_omega);

/// norm^q for q >= 1.
double integrand_serrin(double state_norm, double q);

/// Trapezoid step: integral += (t - last_t)(integrand + last_integrand)/2.
/// The first call only records the starting point.
void accumulate(CriterionAccumulator& acc, double t, double integrand);

struct CriterionRow {
  std::string name;
  double integral = 0.0;
  double sup_integrand = 0.0;
  bool alarm = false;
};

struct CriterionReport {
  std::vector<CriterionRow> rows;
};

CriterionReport report(const std::vector<CriterionAccumulator>& accs);

}  // namespace vesicle
