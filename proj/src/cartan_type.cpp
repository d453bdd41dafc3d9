#include "reflectionlab/cartan_type.hpp"

#include <algorithm>
#include <numeric>

namespace reflectionlab {

std::string family_name(Family f) {
  switch (f) {
    case Family::A: return "A";
    case Family::B: return "B";
    case Family::C: return "C";
    case Family::D: return "D";
    case Family::E: return "E";
    case Family::F: return "F";
    case Family::G: return "G";
    case Family::H: return "H";
    case Family::I2: return "I2";
  }
  return "?";
}

std::string TypeComponent::label() const {
  std::string s;
  if (dec == Decoration::Tilde) s += "~";
  if (family == Family::I2) {
    s += "I2(" + std::to_string(m) + ")";
  } else {
    s += family_name(family) + std::to_string(rank);
  }
  return s;
}

std::int64_t TypeComponent::group_order() const {
  auto factorial = [](int n) {
    std::int64_t f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
  };
  switch (family) {
    case Family::A: return factorial(rank + 1);
    case Family::B:
    case Family::C: return (std::int64_t(1) << rank) * factorial(rank);
    case Family::D: return (std::int64_t(1) << (rank - 1)) * factorial(rank);
    case Family::E:
      if (rank == 6) return 51840;
      if (rank == 7) return 2903040;
      if (rank == 8) return 696729600;
      break;
    case Family::F: return 1152;
    case Family::G: return 12;
    case Family::H:
      if (rank == 3) return 120;
      if (rank == 4) return 14400;
      break;
    case Family::I2: return 2 * m;
  }
  fail(ErrorKind::UnrecognizedType, "no order formula for " + label());
}

int TypeComponent::coxeter_number() const {
  switch (family) {
    case Family::A: return rank + 1;
    case Family::B:
    case Family::C: return 2 * rank;
    case Family::D: return rank >= 2 ? 2 * rank - 2 : 2;
    case Family::E:
      if (rank == 6) return 12;
      if (rank == 7) return 18;
      if (rank == 8) return 30;
      break;
    case Family::F: return 12;
    case Family::G: return 6;
    case Family::H:
      if (rank == 3) return 10;
      if (rank == 4) return 30;
      break;
    case Family::I2: return m;
  }
  fail(ErrorKind::UnrecognizedType, "no Coxeter number for " + label());
}

void CartanType::normalize() {
  std::sort(components.begin(), components.end(),
            [](const TypeComponent& a, const TypeComponent& b) {
              int ra = a.family == Family::I2 ? 2 : a.rank;
              int rb = b.family == Family::I2 ? 2 : b.rank;
              if (ra != rb) return ra < rb;
              if (a.family != b.family) return a.family < b.family;
              if (a.m != b.m) return a.m < b.m;
              return a.dec < b.dec;
            });
}

std::string CartanType::label() const {
  if (components.empty()) return "∅";
  std::string s;
  std::size_t i = 0;
  while (i < components.size()) {
    std::size_t j = i;
    while (j < components.size() && components[j] == components[i]) ++j;
    if (!s.empty()) s += " ";
    s += components[i].label();
    if (j - i > 1) s += "^" + std::to_string(j - i);
    i = j;
  }
  return s;
}

std::int64_t CartanType::group_order() const {
  std::int64_t o = 1;
  for (const auto& c : components) o *= c.group_order();
  return o;
}

std::int64_t CartanType::coxeter_order() const {
  std::int64_t l = 1;
  for (const auto& c : components) l = std::lcm(l, std::int64_t(c.coxeter_number()));
  return l;
}

int CartanType::rank() const {
  int r = 0;
  for (const auto& c : components) r += c.family == Family::I2 ? 2 : c.rank;
  return r;
}

CartanType parse_type_label(const std::string& label) {
  CartanType t;
  if (label == "∅" || label.empty()) return t;
  std::size_t i = 0;
  auto read_int = [&]() {
    int v = 0;
    while (i < label.size() && label[i] >= '0' && label[i] <= '9')
      v = v * 10 + (label[i++] - '0');
    return v;
  };
  while (i < label.size()) {
    if (label[i] == ' ') {
      ++i;
      continue;
    }
    TypeComponent c;
    if (label[i] == '~') {
      c.dec = Decoration::Tilde;
      ++i;
    }
    char f = label[i++];
    if (f == 'I') {
      if (i < label.size() && label[i] == '2') ++i;
      if (i >= label.size() || label[i] != '(')
        fail(ErrorKind::UnrecognizedType, "bad I2 label: " + label);
      ++i;
      c.family = Family::I2;
      c.rank = 2;
      c.m = read_int();
      if (i >= label.size() || label[i] != ')')
        fail(ErrorKind::UnrecognizedType, "bad I2 label: " + label);
      ++i;
    } else {
      switch (f) {
        case 'A': c.family = Family::A; break;
        case 'B': c.family = Family::B; break;
        case 'C': c.family = Family::C; break;
        case 'D': c.family = Family::D; break;
        case 'E': c.family = Family::E; break;
        case 'F': c.family = Family::F; break;
        case 'G': c.family = Family::G; break;
        case 'H': c.family = Family::H; break;
        default: fail(ErrorKind::UnrecognizedType, "bad type label: " + label);
      }
      c.rank = read_int();
    }
    int mult = 1;
    if (i < label.size() && label[i] == '^') {
      ++i;
      mult = read_int();
    }
    for (int k = 0; k < mult; ++k) t.components.push_back(c);
  }
  t.normalize();
  return t;
}

}  // namespace reflectionlab
