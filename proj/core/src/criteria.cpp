#include "vesicle/criteria.hpp"

#include <cmath>
#include <stdexcept>

namespace vesicle {

namespace {
constexpr double kE = 2.718281828459045235360287471353;

void check_scaling(double p, double q, double target) {
  if (!(p > 3.0)) throw std::invalid_argument("serrin criterion: need p > 3");
  if (!(q >= 1.0)) throw std::invalid_argument("serrin criterion: need q >= 1");
  const double lhs = 3.0 / p + 2.0 / q;
  if (std::abs(lhs - target) > 1e-9)
    throw std::invalid_argument("serrin criterion: 3/p + 2/q = " + std::to_string(lhs) +
                                ", expected " + std::to_string(target));
}
}  // namespace

std::string criterion_kind_name(CriterionKind kind) {
  switch (kind) {
    case CriterionKind::SerrinU: return "serrin_u";
    case CriterionKind::SerrinGrad: return "serrin_grad";
    case CriterionKind::Bkm: return "bkm";
    case CriterionKind::Besov0: return "besov0";
    case CriterionKind::LogBesov0: return "log_besov0";
    case CriterionKind::LogBesovM1: return "log_besov_m1";
  }
  return "unknown";
}

CriterionAccumulator CriterionAccumulator::make(CriterionKind kind,
                                                std::optional<double> threshold) {
  if (kind == CriterionKind::SerrinU || kind == CriterionKind::SerrinGrad)
    throw std::invalid_argument("use serrin_u/serrin_grad to construct serrin accumulators");
  CriterionAccumulator acc;
  acc.kind = kind;
  acc.threshold = threshold;
  return acc;
}

CriterionAccumulator CriterionAccumulator::serrin_u(double p, double q,
                                                    std::optional<double> threshold) {
  check_scaling(p, q, 1.0);
  CriterionAccumulator acc;
  acc.kind = CriterionKind::SerrinU;
  acc.p = p;
  acc.q = q;
  acc.threshold = threshold;
  return acc;
}

CriterionAccumulator CriterionAccumulator::serrin_grad(double p, double q,
                                                       std::optional<double> threshold) {
  check_scaling(p, q, 2.0);
  CriterionAccumulator acc;
  acc.kind = CriterionKind::SerrinGrad;
  acc.p = p;
  acc.q = q;
  acc.threshold = threshold;
  return acc;
}

std::string CriterionAccumulator::label() const {
  std::string name = "int_" + criterion_kind_name(kind);
  if (kind == CriterionKind::SerrinU || kind == CriterionKind::SerrinGrad) {
    auto fmt = [](double x) {
      std::string s = std::to_string(x);
      s.erase(s.find_last_not_of('0') + 1);
      if (!s.empty() && s.back() == '.') s.pop_back();
      return s;
    };
    name += "_p" + fmt(p) + "_q" + fmt(q);
  }
  return name;
}

double integrand_log_besov0(double b0) {
  if (b0 < 0.0) throw std::invalid_argument("integrand_log_besov0: negative norm");
  return b0 / std::sqrt(1.0 + std::log(kE + b0));
}

double integrand_log_besov_m1(double bm1) {
  if (bm1 < 0.0) throw std::invalid_argument("integrand_log_besov_m1: negative norm");
  return bm1 * bm1 / (1.0 + std::log(kE + bm1));
}

double integrand_bkm(double linf_omega) {
  if (linf_omega < 0.0) throw std::invalid_argument("integrand_bkm: negative norm");
  return linf_omega;
}

double integrand_serrin(double state_norm, double q) {
  if (q < 1.0) throw std::invalid_argument("integrand_serrin: q must be >= 1");
  return std::pow(state_norm, q);
}

void accumulate(CriterionAccumulator& acc, double t, double integrand) {
  acc.sup_integrand = std::max(acc.sup_integrand, integrand);
  if (!acc.started) {
    acc.started = true;
    acc.last_t = t;
    acc.last_integrand = integrand;
    return;
  }
  if (!(t > acc.last_t)) throw std::invalid_argument("accumulate: time must increase");
  acc.integral += (t - acc.last_t) * 0.5 * (integrand + acc.last_integrand);
  acc.last_t = t;
  acc.last_integrand = integrand;
}

CriterionReport report(const std::vector<CriterionAccumulator>& accs) {
  CriterionReport rep;
  for (const CriterionAccumulator& acc : accs) {
    CriterionRow row;
    row.name = acc.label();
    row.integral = acc.integral;
    row.sup_integrand = acc.sup_integrand;
    row.alarm = acc.threshold && acc.integral > *acc.threshold;
    rep.rows.push_back(row);
  }
  return rep;
}

}  // namespace vesicle
