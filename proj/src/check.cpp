#include "jordan/check.hpp"

#include <sstream>

namespace jordan {

std::string CheckMode::to_string() const {
  switch (kind) {
  case Kind::Formal:
    return "formal";
  case Kind::Exhaustive:
    return "exhaustive";
  case Kind::Sampled:
    return "sampled(seed=" + std::to_string(seed) + ",count=" + std::to_string(count) + ")";
  }
  return "?";
}

CheckMode default_mode(FieldSpec f, std::size_t enum_dim, std::uint64_t bound) {
  if (f.is_rationals())
    return CheckMode::formal();
  if (pow_sat(f.characteristic(), enum_dim) <= bound)
    return CheckMode::exhaustive(bound);
  return CheckMode::sampled();
}

std::string AxiomCheck::to_string() const {
  std::ostringstream os;
  os << axiom << " [" << mode.to_string() << "]: " << (passed ? "PASS" : "FAIL");
  if (!witness.empty()) {
    os << " at";
    for (std::size_t i = 0; i < witness.size(); ++i)
      os << " " << (i < slot_names.size() ? slot_names[i] : "?") << "=" << vec_to_string(witness[i]);
  }
  if (!note.empty())
    os << " (" << note << ")";
  return os.str();
}

bool ValidationReport::passed() const {
  for (const AxiomCheck& c : checks)
    if (!c.passed)
      return false;
  return true;
}

const AxiomCheck* ValidationReport::find(std::string_view axiom) const {
  for (const AxiomCheck& c : checks)
    if (c.axiom == axiom)
      return &c;
  return nullptr;
}

void ValidationReport::append(const ValidationReport& o) {
  checks.insert(checks.end(), o.checks.begin(), o.checks.end());
}

std::string ValidationReport::to_text() const {
  std::ostringstream os;
  for (const AxiomCheck& c : checks)
    os << c.to_string() << "\n";
  return os.str();
}

namespace detail {

bool for_each_linear_combo(const std::vector<Slot>& slots,
                           const std::function<bool(const std::vector<std::size_t>&)>& fn) {
  std::vector<std::size_t> dims;
  for (const Slot& s : slots)
    if (s.linear) {
      if (s.dim == 0)
        return true; // vacuous quantification
      dims.push_back(s.dim);
    }
  std::vector<std::size_t> combo(dims.size(), 0);
  while (true) {
    if (!fn(combo))
      return false;
    std::size_t i = combo.size();
    while (i > 0) {
      --i;
      if (++combo[i] < dims[i])
        break;
      combo[i] = 0;
      if (i == 0)
        return true;
    }
    if (combo.empty())
      return true;
  }
}

bool next_tuple(std::vector<std::uint64_t>& digits, std::uint64_t p) {
  std::size_t i = digits.size();
  while (i > 0) {
    --i;
    if (++digits[i] < p)
      return true;
    digits[i] = 0;
  }
  return false;
}

Scalar random_scalar(FieldSpec f, std::mt19937& rng) {
  // mt19937 output is standardized, so reducing it directly keeps runs
  // reproducible across platforms (std distributions are not portable)
  if (f.is_prime_field())
    return Scalar::from_int(f, static_cast<long long>(rng() % f.characteristic()));
  long long num = static_cast<long long>(rng() % 13) - 6;
  long long den = static_cast<long long>(rng() % 3) + 1;
  return Scalar::from_rational(BigRat(num, den));
}

} // namespace detail

} // namespace jordan
