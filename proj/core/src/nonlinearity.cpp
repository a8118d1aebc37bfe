#include <graphpde/nonlinearity.hpp>

#include <cmath>
#include <limits>
#include <sstream>

#include <graphpde/error.hpp>
#include <graphpde/quadrature.hpp>

namespace graphpde {

namespace {

constexpr double kUnset = std::numeric_limits<double>::quiet_NaN();

void fill_slot(std::vector<double>& table, std::size_t slots, std::size_t slot,
               const WeightedGraph& g, const VertexFunction& values) {
  const auto ids = values.vertices();
  const auto vals = values.values();
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (auto x = g.find(ids[i])) table[*x * slots + slot] = vals[i];
  }
}

double powsgn(double t, double q) {
  if (t == 0.0) return 0.0;
  return std::copysign(std::pow(std::abs(t), q), t);
}

}  // namespace

Nonlinearity Nonlinearity::power(const WeightedGraph& g, const VertexFunction& a,
                                 const VertexFunction& b, double q, double sign) {
  if (!(q > 0.0)) throw Error(ErrorCode::InvalidParameters, "power nonlinearity needs q > 0");
  Nonlinearity nl;
  nl.kind_ = NonlinearityKind::PowerYamabe;
  nl.zero_ = false;
  nl.q_ = q;
  nl.sign_ = sign < 0.0 ? -1.0 : 1.0;
  nl.slots_ = 2;
  nl.slot_names_ = {"a", "b"};
  nl.table_.assign(g.vertex_count() * 2, kUnset);
  fill_slot(nl.table_, 2, 0, g, a);
  fill_slot(nl.table_, 2, 1, g, b);

  GrowthData growth;
  growth.q = q;
  for (std::size_t i = 0; i < a.size(); ++i) growth.a.set(a.vertices()[i], std::abs(a.values()[i]));
  for (std::size_t i = 0; i < b.size(); ++i) growth.b.set(b.vertices()[i], std::abs(b.values()[i]));
  nl.growth_ = std::move(growth);
  return nl;
}

Nonlinearity Nonlinearity::exponential(const WeightedGraph& g, const VertexFunction& alpha,
                                       const VertexFunction& beta) {
  Nonlinearity nl;
  nl.kind_ = NonlinearityKind::Exponential;
  nl.zero_ = false;
  nl.slots_ = 2;
  nl.slot_names_ = {"alpha", "beta"};
  nl.table_.assign(g.vertex_count() * 2, kUnset);
  fill_slot(nl.table_, 2, 0, g, alpha);
  fill_slot(nl.table_, 2, 1, g, beta);
  return nl;
}

Nonlinearity Nonlinearity::expression(const WeightedGraph& g, expr::Expression tree,
                                      const expr::SymbolTable& symbols,
                                      const std::map<std::string, VertexFunction>& coefficients) {
  Nonlinearity nl;
  nl.kind_ = NonlinearityKind::Expression;
  nl.zero_ = false;
  nl.slots_ = symbols.coefficient_count();
  nl.slot_names_ = symbols.coefficient_names();
  nl.table_.assign(g.vertex_count() * nl.slots_, kUnset);
  for (std::size_t s = 0; s < nl.slots_; ++s) {
    auto it = coefficients.find(nl.slot_names_[s]);
    if (it != coefficients.end()) fill_slot(nl.table_, nl.slots_, s, g, it->second);
  }
  nl.tree_ = std::make_shared<const expr::Expression>(std::move(tree));
  return nl;
}

const double* Nonlinearity::coefficients_at(Index x) const {
  if (slots_ == 0) return nullptr;
  if ((x + 1) * slots_ > table_.size()) {
    throw Error(ErrorCode::UnknownVertex, "vertex index out of range for nonlinearity");
  }
  const double* row = table_.data() + x * slots_;
  return row;
}

namespace {

double coefficient(const double* row, std::size_t slot, const std::vector<std::string>& names,
                   Index x) {
  const double v = row[slot];
  if (std::isnan(v)) {
    throw Error(ErrorCode::MissingValue, "coefficient '" + names[slot] +
                                             "' has no value at vertex index " +
                                             std::to_string(x));
  }
  return v;
}

}  // namespace

double Nonlinearity::value(Index x, double t) const {
  if (zero_) return 0.0;
  const double* row = coefficients_at(x);
  switch (kind_) {
    case NonlinearityKind::PowerYamabe: {
      const double a = coefficient(row, 0, slot_names_, x);
      const double b = coefficient(row, 1, slot_names_, x);
      return a + sign_ * b * powsgn(t, q_);
    }
    case NonlinearityKind::Exponential: {
      const double alpha = coefficient(row, 0, slot_names_, x);
      const double beta = coefficient(row, 1, slot_names_, x);
      return alpha * std::exp(beta * t);
    }
    case NonlinearityKind::Expression: {
      for (std::size_t s = 0; s < slots_; ++s) coefficient(row, s, slot_names_, x);
      return tree_->value(t, {row, slots_});
    }
  }
  return 0.0;
}

double Nonlinearity::derivative(Index x, double t) const {
  if (zero_) return 0.0;
  const double* row = coefficients_at(x);
  switch (kind_) {
    case NonlinearityKind::PowerYamabe: {
      const double b = coefficient(row, 1, slot_names_, x);
      if (t == 0.0) {
        if (q_ > 1.0) return 0.0;
        if (q_ == 1.0) return sign_ * b;
        return sign_ * b * std::numeric_limits<double>::infinity();
      }
      return sign_ * b * q_ * std::pow(std::abs(t), q_ - 1.0);
    }
    case NonlinearityKind::Exponential: {
      const double alpha = coefficient(row, 0, slot_names_, x);
      const double beta = coefficient(row, 1, slot_names_, x);
      return alpha * beta * std::exp(beta * t);
    }
    case NonlinearityKind::Expression: {
      for (std::size_t s = 0; s < slots_; ++s) coefficient(row, s, slot_names_, x);
      return tree_->derivative(t, {row, slots_});
    }
  }
  return 0.0;
}

double Nonlinearity::primitive(Index x, double t) const {
  if (zero_ || t == 0.0) return 0.0;
  const double* row = coefficients_at(x);
  switch (kind_) {
    case NonlinearityKind::PowerYamabe: {
      const double a = coefficient(row, 0, slot_names_, x);
      const double b = coefficient(row, 1, slot_names_, x);
      return a * t + sign_ * b * std::pow(std::abs(t), q_ + 1.0) / (q_ + 1.0);
    }
    case NonlinearityKind::Exponential: {
      const double alpha = coefficient(row, 0, slot_names_, x);
      const double beta = coefficient(row, 1, slot_names_, x);
      if (beta == 0.0) return alpha * t;
      return alpha * std::expm1(beta * t) / beta;
    }
    case NonlinearityKind::Expression: {
      for (std::size_t s = 0; s < slots_; ++s) coefficient(row, s, slot_names_, x);
      const std::span<const double> coefs{row, slots_};
      return quad::adaptive_simpson([&](double s) { return tree_->value(s, coefs); }, 0.0, t);
    }
  }
  return 0.0;
}

std::string Nonlinearity::describe() const {
  if (zero_) return "0";
  std::ostringstream os;
  switch (kind_) {
    case NonlinearityKind::PowerYamabe:
      os << "a " << (sign_ < 0 ? "-" : "+") << " b*powsgn(t, " << expr::format_double(q_) << ")";
      break;
    case NonlinearityKind::Exponential:
      os << "alpha*exp(beta*t)";
      break;
    case NonlinearityKind::Expression:
      os << tree_->to_string();
      break;
  }
  return os.str();
}

double primitive_F(const Nonlinearity& nl, const WeightedGraph& g, VertexId x, double t) {
  if (!std::isfinite(t)) throw Error(ErrorCode::InvalidParameters, "t must be finite");
  return nl.primitive(g.index_of(x), t);
}

double growth_violation(const Nonlinearity& nl, const Domain& d, double t_max, int points) {
  if (!nl.growth()) return 0.0;
  const GrowthData& gd = *nl.growth();
  const WeightedGraph& g = d.graph();
  double worst = -std::numeric_limits<double>::infinity();
  for (Index x : d.omega()) {
    const VertexId id = g.id(x);
    const double a = gd.a.at(id);
    const double b = gd.b.at(id);
    for (int i = 0; i < points; ++i) {
      const double t = -t_max + 2.0 * t_max * i / (points - 1);
      const double bound = a + b * std::pow(std::abs(t), gd.q);
      const double excess = std::abs(nl.value(x, t)) - bound;
      worst = std::max(worst, excess - 1e-9 * (1.0 + bound));
    }
  }
  return worst;
}

MonotonicityReport check_monotone(const Nonlinearity& nl, const WeightedGraph& g,
                                  std::span<const Index> vertices, double range, int points) {
  MonotonicityReport report;
  report.min_derivative = std::numeric_limits<double>::infinity();
  for (Index x : vertices) {
    for (int i = 0; i < points; ++i) {
      const double t = -range + 2.0 * range * i / (points - 1);
      double d = 0.0;
      try {
        d = nl.derivative(x, t);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::EvalError) throw;
        // A kink where the derivative is unbounded is not a decrease.
        continue;
      }
      if (d < report.min_derivative) {
        report.min_derivative = d;
        report.worst_vertex = g.id(x);
        report.worst_t = t;
      }
    }
  }
  if (vertices.empty()) report.min_derivative = 0.0;
  report.monotone = report.min_derivative >= -1e-12;
  return report;
}

}  // namespace graphpde
