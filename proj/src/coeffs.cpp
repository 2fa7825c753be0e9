#include "intricacy/coeffs.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "intricacy/error.hpp"
#include "intricacy/numeric.hpp"

namespace intricacy {

namespace {

constexpr double kUnderflow = 1e-300;

long double power(long double x, int e) {
  long double r = 1.0L;
  for (int i = 0; i < e; ++i) r *= x;
  return r;
}

double parse_number(const std::string& text, const std::string& context) {
  try {
    std::size_t used = 0;
    double v = std::stod(text, &used);
    if (used != text.size()) throw InputError("");
    return v;
  } catch (const std::exception&) {
    throw InputError("bad number '" + text + "' in coefficient spec '" + context + "'");
  }
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) parts.push_back(item);
  return parts;
}

}  // namespace

// ---------------------------------------------------------------------------
// SymmetricMeasure

SymmetricMeasure SymmetricMeasure::from_one_sided(const std::vector<Atom>& atoms,
                                                  double lebesgue_mass) {
  if (!(lebesgue_mass >= 0.0)) throw InputError("negative Lebesgue mass");
  SymmetricMeasure m;
  m.lebesgue_ = lebesgue_mass;
  auto add = [&](double x, double mass) {
    for (auto& a : m.atoms_) {
      if (a.location == x) {
        a.mass += mass;
        return;
      }
    }
    m.atoms_.push_back({x, mass});
  };
  for (const auto& a : atoms) {
    if (!(a.mass >= 0.0)) throw InputError("negative atom mass");
    if (!(a.location >= 0.0 && a.location <= 1.0))
      throw InputError("atom location outside [0,1]");
    if (a.mass == 0.0) continue;
    if (a.location == 0.0 || a.location == 1.0)
      throw InputError("atoms at 0 or 1 are not allowed");
    add(a.location, a.mass);
    if (a.location != 0.5) add(1.0 - a.location, a.mass);
  }
  std::sort(m.atoms_.begin(), m.atoms_.end(),
            [](const Atom& a, const Atom& b) { return a.location < b.location; });
  if (std::abs(m.total_mass() - 1.0) > 1e-9) {
    throw InputError("symmetric measure has total mass " + format_sig(m.total_mass()) +
                     " after mirroring; expected 1");
  }
  return m;
}

double SymmetricMeasure::total_mass() const {
  double t = lebesgue_;
  for (const auto& a : atoms_) t += a.mass;
  return t;
}

long double SymmetricMeasure::moment(int n, int k) const {
  long double s = 0.0L;
  for (const auto& a : atoms_) {
    const long double x = a.location;
    s += a.mass * power(x, k) * power(1.0L - x, n - k);
  }
  if (lebesgue_ > 0.0) {
    // Beta(k+1, n-k+1) = k!(n-k)!/(n+1)! = 1/((n+1) C(n,k))
    s += lebesgue_ / ((n + 1) * binomial(n, k));
  }
  return s;
}

// ---------------------------------------------------------------------------
// CoefficientSystem

CoefficientSystem::CoefficientSystem(Kind kind, int horizon, std::string spec)
    : kind_(kind), horizon_(horizon), spec_(std::move(spec)) {
  if (horizon < 1) throw InputError("coefficient horizon must be positive");
}

template <typename Fn>
void CoefficientSystem::fill(const Fn& exact) {
  bool underflowed = false;
  table_.assign(horizon_ + 1, {});
  for (int n = 0; n <= horizon_; ++n) {
    table_[n].resize(n + 1);
    for (int k = 0; k <= n; ++k) {
      double w = static_cast<double>(exact(n, k));
      if (w > 0.0 && w < kUnderflow) {
        w = 0.0;
        underflowed = true;
      }
      table_[n][k] = w;
    }
  }
  if (underflowed) warn("coefficient weights below 1e-300 flushed to zero (" + spec_ + ")");
}

CoefficientSystem CoefficientSystem::uniform(int horizon) {
  CoefficientSystem c(Kind::uniform, horizon, "uniform");
  c.fill([](int n, int) { return std::ldexp(1.0L, -n); });
  return c;
}

CoefficientSystem CoefficientSystem::neural(int horizon) {
  CoefficientSystem c(Kind::neural, horizon, "neural");
  c.fill([](int n, int k) { return 1.0L / ((n + 1) * binomial(n, k)); });
  return c;
}

CoefficientSystem CoefficientSystem::p_symmetric(double p, int horizon) {
  if (!(p > 0.0 && p < 1.0)) throw InputError("p-symmetric weights need 0 < p < 1");
  CoefficientSystem c(Kind::p_symmetric, horizon, "psym:" + format_sig(p, 17));
  const long double pl = p;
  const long double ql = 1.0L - pl;
  c.fill([&](int n, int k) {
    return 0.5L * (power(pl, k) * power(ql, n - k) + power(ql, k) * power(pl, n - k));
  });
  return c;
}

CoefficientSystem CoefficientSystem::from_measure(const SymmetricMeasure& measure, int horizon) {
  std::string spec = "measure:";
  bool first = true;
  for (const auto& a : measure.atoms()) {
    if (a.location > 0.5) continue;
    if (!first) spec += ",";
    spec += format_sig(a.location, 17) + "=" + format_sig(a.mass, 17);
    first = false;
  }
  if (measure.lebesgue_mass() > 0.0) spec += ";lebesgue=" + format_sig(measure.lebesgue_mass(), 17);
  CoefficientSystem c(Kind::measure, horizon, spec);
  c.fill([&](int n, int k) { return measure.moment(n, k); });
  return c;
}

CoefficientSystem CoefficientSystem::from_measure(
    const std::vector<SymmetricMeasure::Atom>& one_sided_atoms, double lebesgue_mass,
    int horizon) {
  return from_measure(SymmetricMeasure::from_one_sided(one_sided_atoms, lebesgue_mass), horizon);
}

CoefficientSystem CoefficientSystem::from_table(std::vector<std::vector<double>> rows) {
  if (rows.size() < 2) throw InputError("coefficient table needs at least rows n = 0, 1");
  for (std::size_t n = 0; n < rows.size(); ++n) {
    if (rows[n].size() != n + 1)
      throw InputError("coefficient table row " + std::to_string(n) + " must have n+1 entries");
  }
  CoefficientSystem c(Kind::table, static_cast<int>(rows.size()) - 1, "table");
  c.table_ = std::move(rows);
  return c;
}

CoefficientSystem CoefficientSystem::parse(const std::string& raw, int horizon) {
  const std::string spec = trim(raw);
  if (spec == "uniform") return uniform(horizon);
  if (spec == "neural") return neural(horizon);
  if (spec.rfind("psym:", 0) == 0) return p_symmetric(parse_number(spec.substr(5), spec), horizon);
  if (spec.rfind("measure:", 0) == 0) {
    std::vector<SymmetricMeasure::Atom> atoms;
    double lebesgue = 0.0;
    for (const auto& section : split(spec.substr(8), ';')) {
      for (const auto& item_raw : split(section, ',')) {
        const std::string item = trim(item_raw);
        if (item.empty()) continue;
        const auto eq = item.find('=');
        if (eq == std::string::npos) throw InputError("expected x=m in '" + spec + "'");
        const std::string key = trim(item.substr(0, eq));
        const double value = parse_number(trim(item.substr(eq + 1)), spec);
        if (key == "lebesgue") {
          lebesgue = value;
        } else {
          atoms.push_back({parse_number(key, spec), value});
        }
      }
    }
    return from_measure(atoms, lebesgue, horizon);
  }
  throw InputError("unknown coefficient spec '" + spec +
                   "' (expected uniform | neural | psym:<p> | measure:...)");
}

double CoefficientSystem::weight(int n, int k) const {
  if (n > horizon_) {
    throw CapExceeded("coefficient horizon exceeded: n=" + std::to_string(n) +
                      " > " + std::to_string(horizon_));
  }
  if (n < 0 || k < 0 || k > n) {
    throw InputError("coefficient index out of range: n=" + std::to_string(n) +
                     ", k=" + std::to_string(k));
  }
  return table_[n][k];
}

// ---------------------------------------------------------------------------
// validate

bool ValidationReport::passed() const {
  return std::all_of(rows.begin(), rows.end(), [&](const ValidationRow& r) {
    return !r.has_negative && r.sum_deviation <= tolerance && r.max_asymmetry <= tolerance;
  });
}

double ValidationReport::max_deviation() const {
  double m = 0.0;
  for (const auto& r : rows) m = std::max(m, r.sum_deviation);
  return m;
}

ValidationReport validate(const CoefficientSystem& system, int n_max) {
  if (n_max > system.horizon()) {
    throw CapExceeded("validate: n_max " + std::to_string(n_max) + " exceeds horizon " +
                      std::to_string(system.horizon()));
  }
  ValidationReport report;
  for (int n = 1; n <= n_max; ++n) {
    ValidationRow row;
    row.n = n;
    long double total = 0.0L;
    for (int k = 0; k <= n; ++k) {
      const double w = system.weight(n, k);
      total += binomial(n, k) * w;
      row.max_asymmetry = std::max(row.max_asymmetry, std::abs(w - system.weight(n, n - k)));
      row.has_negative = row.has_negative || w < 0.0;
    }
    row.sum_deviation = static_cast<double>(std::abs(total - 1.0L));
    report.rows.push_back(row);
  }
  return report;
}

}  // namespace intricacy
