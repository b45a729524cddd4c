#include "ffmc/formula.hpp"

#include <algorithm>
#include <sstream>

namespace ffmc {

bool Constraint::constant_truth() const { return holds(poly.constant_value()); }

std::string Constraint::to_string(std::span<const std::string> names) const {
  return poly.to_string(names) + (rel == Rel::Eq ? " = 0" : " != 0");
}

int Clause::level() const {
  int k = 0;
  for (const auto& f : literals) k = std::max(k, f.level());
  return k;
}

std::string Clause::to_string(std::span<const std::string> names) const {
  std::string out;
  for (std::size_t i = 0; i < literals.size(); ++i) {
    if (i) out += " | ";
    out += literals[i].to_string(names);
  }
  return out;
}

bool Formula::operator==(const Formula& o) const {
  if (nvars != o.nvars || clauses != o.clauses) return false;
  if (field == o.field) return true;
  return field && o.field && *field == *o.field;
}

Truth eval_constraint(const Constraint& f, const Assignment& nu) {
  for (const auto& t : f.poly.terms())
    for (const auto& [x, e] : t.mono.factors()) {
      const auto idx = static_cast<std::size_t>(x) - 1;
      if (idx >= nu.size() || !nu[idx]) return Truth::Undef;
    }
  return f.holds(f.poly.evaluate(nu)) ? Truth::True : Truth::False;
}

Truth eval_clause(const Clause& c, const Assignment& nu) {
  bool undef = false;
  for (const auto& f : c.literals) {
    const Truth t = eval_constraint(f, nu);
    if (t == Truth::True) return t;
    if (t == Truth::Undef) undef = true;
  }
  return undef ? Truth::Undef : Truth::False;
}

std::vector<Elem> satisfying_values(const Constraint& f, std::span<const Elem> point, int k) {
  const Field& F = *f.poly.field();
  const auto image = f.poly.univariate_image(point.subspan(0, std::min<std::size_t>(point.size(), static_cast<std::size_t>(k) - 1)), k);
  std::vector<Elem> out;
  for (const Elem beta : F.elements())
    if (f.holds(dense::eval(F, image, beta))) out.push_back(beta);
  return out;
}

Formula simplify(const Formula& in) {
  Formula out;
  out.field = in.field;
  out.nvars = in.nvars;
  out.names = in.names;
  for (const auto& clause : in.clauses) {
    Clause c;
    bool satisfied = false;
    for (const auto& f : clause.literals) {
      if (f.is_constant()) {
        if (f.constant_truth()) satisfied = true;
        continue;
      }
      if (std::find(c.literals.begin(), c.literals.end(), f) != c.literals.end()) continue;
      if (std::find(c.literals.begin(), c.literals.end(), f.negate()) != c.literals.end()) satisfied = true;
      c.literals.push_back(f);
    }
    if (!satisfied) out.clauses.push_back(std::move(c));
  }
  return out;
}

bool check_model(const Formula& F, std::span<const Elem> model) {
  for (const auto& c : F.clauses) {
    bool sat = false;
    for (const auto& f : c.literals)
      if (f.holds(f.poly.evaluate(model))) {
        sat = true;
        break;
      }
    if (!sat) return false;
  }
  return true;
}

namespace {

std::string modulus_string(const Field& F) {
  const auto& m = F.modulus();
  std::string out;
  for (std::size_t i = m.size(); i-- > 0;) {
    if (m[i] == 0) continue;
    if (!out.empty()) out += "+";
    if (i == 0 || m[i] != 1) out += std::to_string(m[i]);
    if (i >= 1) out += "a";
    if (i > 1) out += "^" + std::to_string(i);
  }
  return out;
}

}  // namespace

std::string render(const Formula& F) {
  std::ostringstream os;
  if (F.field->is_prime_field())
    os << "field " << F.field->order() << '\n';
  else
    os << "field " << F.field->characteristic() << '^' << F.field->degree() << " mod " << modulus_string(*F.field)
       << '\n';
  std::vector<std::string> names = F.names;
  for (int i = static_cast<int>(names.size()); i < F.nvars; ++i) names.push_back("x" + std::to_string(i + 1));
  os << "vars";
  for (int i = 0; i < F.nvars; ++i) os << ' ' << names[static_cast<std::size_t>(i)];
  os << '\n';
  for (const auto& c : F.clauses) {
    os << "clause";
    if (!c.empty()) os << ' ' << c.to_string(names);
    os << '\n';
  }
  return os.str();
}

}  // namespace ffmc
