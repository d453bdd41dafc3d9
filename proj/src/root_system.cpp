#include "reflectionlab/root_system.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <set>

namespace reflectionlab {

namespace {

int cmp_scalar(const Scalar& a, const Scalar& b) { return (a - b).sign(); }

int cmp_vec(const Vec& a, const Vec& b) {
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    int c = cmp_scalar(a[i], b[i]);
    if (c != 0) return c;
  }
  return 0;
}

struct VecLess {
  bool operator()(const Vec& a, const Vec& b) const { return cmp_vec(a, b) < 0; }
};

Vec make_vec(int dim, std::initializer_list<Scalar> entries) {
  Vec v = Vec::Constant(dim, Scalar(0));
  int i = 0;
  for (const auto& e : entries) v[i++] = e;
  return v;
}

Vec unit(int dim, int i) {
  Vec v = Vec::Constant(dim, Scalar(0));
  v[i] = Scalar(1);
  return v;
}

int expected_root_count(Family f, int rank) {
  switch (f) {
    case Family::A: return rank * (rank + 1);
    case Family::B:
    case Family::C: return 2 * rank * rank;
    case Family::D: return 2 * rank * (rank - 1);
    case Family::E: return rank == 6 ? 72 : (rank == 7 ? 126 : 240);
    case Family::F: return 48;
    case Family::G: return 12;
    case Family::H: return rank == 3 ? 30 : 120;
    case Family::I2: return 0;
  }
  return 0;
}

std::vector<Vec> simple_roots_for(Family f, int rank, int& dim) {
  std::vector<Vec> s;
  const Scalar one(1), neg(-1);
  switch (f) {
    case Family::A: {
      dim = rank + 1;
      for (int i = 0; i < rank; ++i) {
        Vec v = unit(dim, i) - unit(dim, i + 1);
        s.push_back(v);
      }
      break;
    }
    case Family::B: {
      dim = rank;
      for (int i = 0; i + 1 < rank; ++i) s.push_back(unit(dim, i) - unit(dim, i + 1));
      s.push_back(unit(dim, rank - 1));
      break;
    }
    case Family::C: {
      dim = rank;
      for (int i = 0; i + 1 < rank; ++i) s.push_back(unit(dim, i) - unit(dim, i + 1));
      s.push_back(Vec(Scalar(2) * unit(dim, rank - 1)));
      break;
    }
    case Family::D: {
      dim = rank;
      for (int i = 0; i + 1 < rank; ++i) s.push_back(unit(dim, i) - unit(dim, i + 1));
      s.push_back(unit(dim, rank - 2) + unit(dim, rank - 1));
      break;
    }
    case Family::E: {
      dim = 8;
      Scalar h(Rational(1, 2));
      Vec a1 = Vec::Constant(8, -h);
      a1[0] = h;
      a1[7] = h;
      s.push_back(a1);
      s.push_back(unit(8, 0) + unit(8, 1));
      s.push_back(unit(8, 1) - unit(8, 0));
      for (int i = 0; i + 1 < 6; ++i) s.push_back(unit(8, i + 2) - unit(8, i + 1));
      s.resize(std::size_t(rank));
      break;
    }
    case Family::F: {
      dim = 4;
      s.push_back(unit(4, 1) - unit(4, 2));
      s.push_back(unit(4, 2) - unit(4, 3));
      s.push_back(unit(4, 3));
      Scalar h(Rational(1, 2));
      s.push_back(make_vec(4, {h, -h, -h, -h}));
      break;
    }
    case Family::G: {
      dim = 3;
      s.push_back(unit(3, 0) - unit(3, 1));
      s.push_back(make_vec(3, {Scalar(-2), one, one}));
      break;
    }
    default:
      fail(ErrorKind::UnsupportedType, "no coordinate model");
  }
  (void)neg;
  return s;
}

std::vector<Vec> h_type_roots(int rank) {
  std::vector<Vec> roots;
  const Scalar half(Rational(1, 2));
  const Scalar qphi(Rational(1, 4), Rational(1, 4));      // phi/2
  const Scalar qinv(Rational(-1, 4), Rational(1, 4));     // (phi-1)/2
  if (rank == 3) {
    for (int i = 0; i < 3; ++i)
      for (int s = -1; s <= 1; s += 2) {
        Vec v = Vec::Constant(3, Scalar(0));
        v[i] = Scalar(s);
        roots.push_back(v);
      }
    // cyclic permutations of (1/2)(+-1, +-phi, +-1/phi)
    for (int c = 0; c < 3; ++c)
      for (int s0 = -1; s0 <= 1; s0 += 2)
        for (int s1 = -1; s1 <= 1; s1 += 2)
          for (int s2 = -1; s2 <= 1; s2 += 2) {
            Scalar vals[3] = {Scalar(s0) * half, Scalar(s1) * qphi,
                              Scalar(s2) * qinv};
            Vec v(3);
            for (int k = 0; k < 3; ++k) v[(c + k) % 3] = vals[k];
            roots.push_back(v);
          }
  } else {
    for (int i = 0; i < 4; ++i)
      for (int s = -1; s <= 1; s += 2) {
        Vec v = Vec::Constant(4, Scalar(0));
        v[i] = Scalar(s);
        roots.push_back(v);
      }
    for (int mask = 0; mask < 16; ++mask) {
      Vec v(4);
      for (int k = 0; k < 4; ++k)
        v[k] = (mask >> k) & 1 ? -half : half;
      roots.push_back(v);
    }
    // even permutations of (1/2)(+-phi, +-1, +-1/phi, 0)
    static const int perms[12][4] = {{0, 1, 2, 3}, {0, 2, 3, 1}, {0, 3, 1, 2},
                                     {1, 0, 3, 2}, {1, 2, 0, 3}, {1, 3, 2, 0},
                                     {2, 0, 1, 3}, {2, 1, 3, 0}, {2, 3, 0, 1},
                                     {3, 0, 2, 1}, {3, 1, 0, 2}, {3, 2, 1, 0}};
    for (const auto& p : perms)
      for (int s0 = -1; s0 <= 1; s0 += 2)
        for (int s1 = -1; s1 <= 1; s1 += 2)
          for (int s2 = -1; s2 <= 1; s2 += 2) {
            Scalar vals[4] = {Scalar(s0) * qphi, Scalar(s1) * half,
                              Scalar(s2) * qinv, Scalar(0)};
            Vec v(4);
            for (int k = 0; k < 4; ++k) v[p[k]] = vals[k];
            roots.push_back(v);
          }
  }
  return roots;
}

}  // namespace

Vec reflect(const Vec& alpha, const Vec& beta) {
  Scalar num = dot(alpha, beta);
  Scalar den = dot(alpha, alpha);
  Scalar c = Scalar(2) * num / den;
  return beta - c * alpha;
}

int RootSystem::index_of(const Vec& coords) const {
  // roots_ is small; lookups go through a sorted index built on demand is
  // avoided -- construction keeps a map, afterwards linear scan is fine for
  // the rare external uses.
  for (int i = 0; i < 2 * n_pos_; ++i)
    if (cmp_vec(roots_[std::size_t(i)].coords, coords) == 0) return i;
  return -1;
}

Vec RootSystem::coroot_coords(int i) const {
  const Root& r = roots_[std::size_t(i)];
  return Vec((Scalar(2) / r.norm) * r.coords);
}

Subsystem RootSystem::full_subsystem() const {
  Subsystem s;
  s.ambient = this;
  for (int i = 0; i < n_pos_; ++i) s.members.set(i);
  return s;
}

Subsystem RootSystem::empty_subsystem() const {
  Subsystem s;
  s.ambient = this;
  return s;
}

Subsystem RootSystem::make_subsystem(const std::vector<int>& idx) const {
  Subsystem s;
  s.ambient = this;
  for (int i : idx) {
    if (i < 0 || i >= n_pos_)
      fail(ErrorKind::Internal, "positive root index out of range");
    s.members.set(i);
  }
  return s;
}

void RootSystem::finish_construction() {
  const int dim = dim_;
  const int rank = rank_;

  // Expand every root over the simple roots.
  Mat smat(dim, rank);
  for (int j = 0; j < rank; ++j) smat.col(j) = raw_roots_[std::size_t(j)];
  // raw_roots_ holds: first `rank` entries are the simple roots, then all
  // roots (possibly including the simples again).
  std::vector<Vec> all(raw_roots_.begin() + rank, raw_roots_.end());

  struct Entry {
    Vec coords;
    Vec expansion;
    Scalar height;
  };
  std::vector<Entry> pos, negs;
  for (auto& v : all) {
    auto x = solve<Scalar>(smat, v);
    if (!x) fail(ErrorKind::Internal, "root outside simple-root span");
    int sgn = 0;
    for (int j = 0; j < rank; ++j) {
      int s = (*x)[j].sign();
      if (s == 0) continue;
      if (sgn == 0) sgn = s;
      if (s != sgn) fail(ErrorKind::Internal, "root with mixed-sign expansion");
    }
    Scalar h{};
    for (int j = 0; j < rank; ++j) h += (*x)[j];
    if (sgn > 0)
      pos.push_back({v, *x, h});
    else if (sgn < 0)
      negs.push_back({v, *x, h});
    else
      fail(ErrorKind::Internal, "zero root");
  }
  if (pos.size() != negs.size())
    fail(ErrorKind::Internal, "asymmetric root list");
  std::sort(pos.begin(), pos.end(), [](const Entry& a, const Entry& b) {
    int c = cmp_scalar(a.height, b.height);
    if (c != 0) return c < 0;
    return cmp_vec(a.expansion, b.expansion) < 0;
  });

  n_pos_ = int(pos.size());
  if (n_pos_ > 120) fail(ErrorKind::Internal, "system too large for member sets");
  roots_.clear();
  roots_.resize(std::size_t(2 * n_pos_));
  for (int i = 0; i < n_pos_; ++i) {
    Root r;
    r.coords = pos[std::size_t(i)].coords;
    r.simple_coords = pos[std::size_t(i)].expansion;
    r.norm = dot(r.coords, r.coords);
    roots_[std::size_t(i)] = r;
    Root rn;
    rn.coords = -pos[std::size_t(i)].coords;
    rn.simple_coords = -pos[std::size_t(i)].expansion;
    rn.norm = r.norm;
    roots_[std::size_t(i + n_pos_)] = rn;
  }

  // Length classes from the positive-root norms.
  std::vector<Scalar> norms;
  for (int i = 0; i < n_pos_; ++i) {
    bool seen = false;
    for (const auto& nm : norms)
      if (nm == roots_[std::size_t(i)].norm) seen = true;
    if (!seen) norms.push_back(roots_[std::size_t(i)].norm);
  }
  if (norms.size() > 2)
    fail(ErrorKind::Internal, "more than two root lengths");
  if (norms.size() == 2) {
    Scalar lo = norms[0], hi = norms[1];
    if ((hi - lo).sign() < 0) std::swap(lo, hi);
    for (auto& r : roots_)
      r.length_class = (r.norm == hi) ? LengthClass::Long : LengthClass::Short;
  }

  // Locate the simple roots.
  std::map<Vec, int, VecLess> index;
  for (int i = 0; i < 2 * n_pos_; ++i) index[roots_[std::size_t(i)].coords] = i;
  simple_idx_.clear();
  for (int j = 0; j < rank; ++j) {
    auto it = index.find(raw_roots_[std::size_t(j)]);
    if (it == index.end() || it->second >= n_pos_)
      fail(ErrorKind::Internal, "simple root not positive");
    simple_idx_.push_back(it->second);
  }

  gram_ = Mat(rank, rank);
  for (int i = 0; i < rank; ++i)
    for (int j = 0; j < rank; ++j)
      gram_(i, j) = dot(roots_[std::size_t(simple_idx_[std::size_t(i)])].coords,
                        roots_[std::size_t(simple_idx_[std::size_t(j)])].coords);

  // Reflection table; a failed lookup means the list is not closed.
  refl_.assign(std::size_t(n_pos_) * std::size_t(2 * n_pos_), 0);
  for (int i = 0; i < n_pos_; ++i) {
    const Vec& a = roots_[std::size_t(i)].coords;
    for (int j = 0; j < 2 * n_pos_; ++j) {
      Vec w = reflect(a, roots_[std::size_t(j)].coords);
      auto it = index.find(w);
      if (it == index.end())
        fail(ErrorKind::Internal, "root list not closed under reflection");
      refl_[std::size_t(i) * std::size_t(2 * n_pos_) + std::size_t(j)] =
          std::uint8_t(it->second);
    }
  }

  inner_.assign(std::size_t(n_pos_) * std::size_t(n_pos_), Scalar(0));
  for (int i = 0; i < n_pos_; ++i)
    for (int j = 0; j < n_pos_; ++j)
      inner_[std::size_t(i) * std::size_t(n_pos_) + std::size_t(j)] =
          dot(roots_[std::size_t(i)].coords, roots_[std::size_t(j)].coords);

  raw_roots_.clear();
}

RootSystemPtr build_root_system(Family family, int rank, std::optional<int> m) {
  (void)m;
  auto bad = [&](const std::string& msg) {
    fail(ErrorKind::UnsupportedType, msg);
  };
  switch (family) {
    case Family::A:
      if (rank < 1) bad("A requires rank >= 1");
      break;
    case Family::B:
    case Family::C:
      if (rank < 2) bad("B/C require rank >= 2");
      break;
    case Family::D:
      if (rank < 2) bad("D requires rank >= 2");
      break;
    case Family::E:
      if (rank < 6 || rank > 8) bad("E requires rank in {6,7,8}");
      break;
    case Family::F:
      if (rank != 4) bad("F requires rank 4");
      break;
    case Family::G:
      if (rank != 2) bad("G requires rank 2");
      break;
    case Family::H:
      if (rank != 3 && rank != 4) bad("H requires rank in {3,4}");
      break;
    case Family::I2:
      bad("I2 has no coordinate model here; it is handled combinatorially");
  }

  auto rs = std::shared_ptr<RootSystem>(new RootSystem());
  rs->type_.components.push_back(
      TypeComponent{family, rank, 0, Decoration::None});
  rs->rank_ = rank;

  if (family == Family::H) {
    std::vector<Vec> roots = h_type_roots(rank);
    rs->dim_ = rank;
    // Positivity by lexicographic sign; simples are the indecomposables.
    std::vector<Vec> positives;
    for (const auto& v : roots) {
      int s = 0;
      for (Eigen::Index i = 0; i < v.size() && s == 0; ++i) s = v[i].sign();
      if (s > 0) positives.push_back(v);
    }
    std::map<Vec, bool, VecLess> pos_set;
    for (const auto& v : positives) pos_set[v] = true;
    std::vector<Vec> simples;
    for (const auto& a : positives) {
      bool decomposable = false;
      for (const auto& d : positives) {
        if (cmp_vec(d, a) == 0) continue;
        if (dot(d, a).sign() <= 0) continue;
        Vec r = reflect(d, a);
        if (pos_set.count(r)) {
          decomposable = true;
          break;
        }
      }
      if (!decomposable) simples.push_back(a);
    }
    if (int(simples.size()) != rank)
      fail(ErrorKind::Internal, "derived simple system has wrong size");
    std::sort(simples.begin(), simples.end(), VecLess());
    rs->raw_roots_ = simples;
    for (const auto& v : roots) rs->raw_roots_.push_back(v);
  } else {
    int dim = 0;
    std::vector<Vec> simples = simple_roots_for(family, rank, dim);
    rs->dim_ = dim;
    // Orbit of the simples under the simple reflections is the whole system.
    std::set<Vec, VecLess> seen;
    std::vector<Vec> queue;
    for (const auto& s : simples) {
      for (const Vec& v : {Vec(s), Vec(-s)})
        if (seen.insert(v).second) queue.push_back(v);
    }
    for (std::size_t k = 0; k < queue.size(); ++k) {
      Vec v = queue[k];
      for (const auto& s : simples) {
        Vec w = reflect(s, v);
        if (seen.insert(w).second) queue.push_back(w);
      }
      if (queue.size() > 4000) fail(ErrorKind::Internal, "runaway closure");
    }
    rs->raw_roots_ = simples;
    for (const auto& v : queue) rs->raw_roots_.push_back(v);
  }

  rs->finish_construction();
  if (rs->n_roots() != expected_root_count(family, rank))
    fail(ErrorKind::Internal, "root count mismatch for " + rs->type_.label());
  return rs;
}

RootSystemPtr dual(const RootSystem& rs) {
  if (!rs.crystallographic())
    fail(ErrorKind::NotCrystallographic, "dual requires a crystallographic system");
  auto out = std::shared_ptr<RootSystem>(new RootSystem());
  TypeComponent c = rs.type().components[0];
  if (c.family == Family::B)
    c.family = Family::C;
  else if (c.family == Family::C)
    c.family = Family::B;
  out->type_.components.push_back(c);
  out->rank_ = rs.rank();
  out->dim_ = rs.dim();
  std::vector<Vec> simples;
  for (int idx : rs.simple_indices()) simples.push_back(rs.coroot_coords(idx));
  out->raw_roots_ = simples;
  for (int i = 0; i < rs.n_roots(); ++i)
    out->raw_roots_.push_back(rs.coroot_coords(i));
  out->finish_construction();
  return out;
}

Subsystem reflection_closure(const RootSystem& ambient, Bitset128 seed) {
  Subsystem s;
  s.ambient = &ambient;
  const int n = ambient.n_positive();
  std::vector<int> stack;
  seed.for_each([&](int i) {
    s.members.set(i);
    stack.push_back(i);
  });
  std::vector<int> elems;
  s.members.for_each([&](int i) { elems.push_back(i); });
  while (!stack.empty()) {
    int i = stack.back();
    stack.pop_back();
    const std::uint8_t* row_i = ambient.reflection_row(i);
    std::size_t count = elems.size();
    for (std::size_t k = 0; k < count; ++k) {
      int j = elems[k];
      int a = ambient.positive_of(row_i[j]);
      if (!s.members.test(a)) {
        s.members.set(a);
        elems.push_back(a);
        stack.push_back(a);
      }
      int b = ambient.positive_of(ambient.reflection_row(j)[i]);
      if (!s.members.test(b)) {
        s.members.set(b);
        elems.push_back(b);
        stack.push_back(b);
      }
    }
    (void)count;
  }
  return s;
}

Subsystem reflection_closure(const RootSystem& ambient,
                             const std::vector<int>& seed) {
  Bitset128 b;
  for (int i : seed) b.set(i);
  return reflection_closure(ambient, b);
}

bool is_reflection_closed(const Subsystem& sub) {
  const RootSystem& rs = *sub.ambient;
  bool ok = true;
  sub.members.for_each([&](int i) {
    if (!ok) return;
    const std::uint8_t* row = rs.reflection_row(i);
    sub.members.for_each([&](int j) {
      if (!ok) return;
      if (!sub.members.test(rs.positive_of(row[j]))) ok = false;
    });
  });
  return ok;
}

int subsystem_rank(const Subsystem& sub) {
  SpanBasis<Scalar> basis(sub.ambient->rank());
  sub.members.for_each(
      [&](int i) { basis.add(sub.ambient->root(i).simple_coords); });
  return basis.rank();
}

Subsystem span_closure(const Subsystem& sub) {
  const RootSystem& rs = *sub.ambient;
  SpanBasis<Scalar> basis(rs.rank());
  sub.members.for_each([&](int i) { basis.add(rs.root(i).simple_coords); });
  Subsystem out;
  out.ambient = &rs;
  for (int i = 0; i < rs.n_positive(); ++i)
    if (basis.contains(rs.root(i).simple_coords)) out.members.set(i);
  return out;
}

std::vector<int> simple_system(const Subsystem& sub) {
  const RootSystem& rs = *sub.ambient;
  if (!is_reflection_closed(sub))
    fail(ErrorKind::NotClosed, "subsystem is not reflection-closed");
  std::vector<int> members;
  sub.members.for_each([&](int i) { members.push_back(i); });
  std::vector<int> simples;
  for (int a : members) {
    bool decomposable = false;
    for (int d : members) {
      if (d == a) continue;
      if (rs.inner(d, a).sign() <= 0) continue;
      if (rs.reflect_index(d, a) < rs.n_positive()) {
        decomposable = true;
        break;
      }
    }
    if (!decomposable) simples.push_back(a);
  }
  return simples;
}

std::vector<std::vector<int>> simple_components(const Subsystem& sub) {
  const RootSystem& rs = *sub.ambient;
  std::vector<int> simples = simple_system(sub);
  int k = int(simples.size());
  std::vector<int> comp(std::size_t(k), -1);
  int ncomp = 0;
  for (int i = 0; i < k; ++i) {
    if (comp[std::size_t(i)] >= 0) continue;
    std::vector<int> stack{i};
    comp[std::size_t(i)] = ncomp;
    while (!stack.empty()) {
      int x = stack.back();
      stack.pop_back();
      for (int j = 0; j < k; ++j) {
        if (comp[std::size_t(j)] >= 0) continue;
        if (!rs.inner(simples[std::size_t(x)], simples[std::size_t(j)])
                 .is_zero()) {
          comp[std::size_t(j)] = ncomp;
          stack.push_back(j);
        }
      }
    }
    ++ncomp;
  }
  std::vector<std::vector<int>> out(std::size_t(ncomp));
  for (int i = 0; i < k; ++i)
    out[std::size_t(comp[std::size_t(i)])].push_back(simples[std::size_t(i)]);
  return out;
}

namespace {

/// Bond order between two simple roots from 4 cos^2(theta).
int bond_order(const RootSystem& rs, int i, int j) {
  Scalar p = rs.inner(i, j);
  if (p.is_zero()) return 2;
  Scalar q = Scalar(4) * p * p / (rs.inner(i, i) * rs.inner(j, j));
  if (q == Scalar(1)) return 3;
  if (q == Scalar(2)) return 4;
  if (q == Scalar(3)) return 6;
  if (q == Scalar(Rational(3, 2), Rational(1, 2))) return 5;  // (3+sqrt5)/2
  fail(ErrorKind::UnrecognizedType, "unrecognized bond angle");
}

struct ComponentShape {
  TypeComponent type;
  std::vector<int> simples;
  std::vector<int> support;  // nonzero coordinate positions
  bool all_short = false;
  bool has_two_lengths = false;
};

ComponentShape classify_component(const RootSystem& rs,
                                  const std::vector<int>& simples) {
  ComponentShape out;
  out.simples = simples;
  int k = int(simples.size());

  std::set<int> supp;
  bool any_long = false, any_short = false, any_single = false;
  for (int idx : simples) {
    const Root& r = rs.root(idx);
    for (int c = 0; c < rs.dim(); ++c)
      if (!r.coords[c].is_zero()) supp.insert(c);
    switch (r.length_class) {
      case LengthClass::Long: any_long = true; break;
      case LengthClass::Short: any_short = true; break;
      case LengthClass::Single: any_single = true; break;
    }
  }
  out.support.assign(supp.begin(), supp.end());
  out.all_short = any_short && !any_long && !any_single;
  out.has_two_lengths = any_short && any_long;

  std::vector<std::vector<int>> bonds(std::size_t(k));
  std::vector<int> degree(std::size_t(k), 0);
  int bond4 = 0, bond5 = 0, bond6 = 0;
  int e4a = -1, e4b = -1;
  for (int i = 0; i < k; ++i) {
    bonds[std::size_t(i)].assign(std::size_t(k), 2);
    for (int j = 0; j < k; ++j) {
      if (i == j) continue;
      int b = bond_order(rs, simples[std::size_t(i)], simples[std::size_t(j)]);
      bonds[std::size_t(i)][std::size_t(j)] = b;
      if (b > 2 && i < j) {
        ++degree[std::size_t(i)];
        ++degree[std::size_t(j)];
        if (b == 4) {
          ++bond4;
          e4a = i;
          e4b = j;
        }
        if (b == 5) ++bond5;
        if (b == 6) ++bond6;
      }
    }
  }

  auto unrecognized = [&]() -> TypeComponent {
    fail(ErrorKind::UnrecognizedType, "component matches no finite type");
  };

  TypeComponent t;
  t.rank = k;
  if (k == 1) {
    t.family = Family::A;
  } else if (k == 2) {
    int b = bonds[0][1];
    if (b == 3) t.family = Family::A;
    else if (b == 4) t.family = Family::B;
    else if (b == 6) t.family = Family::G;
    else if (b == 5) {
      t.family = Family::I2;
      t.m = 5;
    } else
      unrecognized();
  } else {
    bool is_path = true;
    int deg3_at = -1;
    for (int i = 0; i < k; ++i) {
      if (degree[std::size_t(i)] > 3) unrecognized();
      if (degree[std::size_t(i)] == 3) {
        if (deg3_at >= 0) unrecognized();
        deg3_at = i;
        is_path = false;
      }
    }
    if (bond5 > 0) {
      if (!is_path || bond5 > 1 || bond4 > 0 || bond6 > 0) unrecognized();
      if (k == 3) t.family = Family::H;
      else if (k == 4) t.family = Family::H;
      else unrecognized();
      // 5-bond must sit at an end of the path
      bool at_end = false;
      for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j)
          if (bonds[std::size_t(i)][std::size_t(j)] == 5 &&
              (degree[std::size_t(i)] == 1 || degree[std::size_t(j)] == 1))
            at_end = true;
      if (!at_end) unrecognized();
    } else if (bond6 > 0) {
      unrecognized();
    } else if (bond4 > 0) {
      if (!is_path || bond4 > 1) unrecognized();
      bool a_end = degree[std::size_t(e4a)] == 1;
      bool b_end = degree[std::size_t(e4b)] == 1;
      if (!a_end && !b_end) {
        if (k != 4) unrecognized();
        t.family = Family::F;
      } else {
        int pendant = a_end ? e4a : e4b;
        int other = a_end ? e4b : e4a;
        Scalar np = rs.inner(simples[std::size_t(pendant)],
                             simples[std::size_t(pendant)]);
        Scalar no = rs.inner(simples[std::size_t(other)],
                             simples[std::size_t(other)]);
        int c = (np - no).sign();
        if (c < 0) t.family = Family::B;
        else if (c > 0) t.family = Family::C;
        else unrecognized();
      }
    } else {
      if (is_path) {
        t.family = Family::A;
      } else {
        // fork: branch lengths from the degree-3 node
        std::vector<int> branch;
        for (int nb = 0; nb < k; ++nb) {
          if (bonds[std::size_t(deg3_at)][std::size_t(nb)] != 3) continue;
          int len = 0, prev = deg3_at, cur = nb;
          while (true) {
            ++len;
            int next = -1;
            for (int x = 0; x < k; ++x)
              if (x != prev && bonds[std::size_t(cur)][std::size_t(x)] == 3)
                next = x;
            if (next < 0) break;
            prev = cur;
            cur = next;
          }
          branch.push_back(len);
        }
        std::sort(branch.begin(), branch.end());
        if (branch.size() != 3) unrecognized();
        if (branch[0] == 1 && branch[1] == 1)
          t.family = Family::D;
        else if (branch[0] == 1 && branch[1] == 2 && branch[2] >= 2 &&
                 branch[2] <= 4)
          t.family = Family::E;
        else
          unrecognized();
      }
    }
  }
  out.type = t;
  return out;
}

}  // namespace

CartanType cartan_type_of(const Subsystem& sub) {
  const RootSystem& rs = *sub.ambient;
  Family ambient_family = rs.type().components[0].family;
  auto comps = simple_components(sub);

  std::vector<ComponentShape> shapes;
  for (const auto& c : comps) shapes.push_back(classify_component(rs, c));

  bool bd_ambient = ambient_family == Family::B || ambient_family == Family::C ||
                    ambient_family == Family::D;
  bool fg_ambient = ambient_family == Family::F || ambient_family == Family::G;

  if (bd_ambient) {
    // Merge {e_i - e_j, e_i + e_j} pairs of rank-1 components into D2;
    // two distinct rank-1 components on the same coordinate pair are always
    // that pair.
    for (std::size_t i = 0; i < shapes.size(); ++i) {
      if (shapes[i].type.rank != 1 || shapes[i].support.size() != 2) continue;
      for (std::size_t j = i + 1; j < shapes.size(); ++j) {
        if (shapes[j].type.rank != 1 || shapes[j].support != shapes[i].support)
          continue;
        shapes[i].type = TypeComponent{Family::D, 2, 0, Decoration::None};
        shapes[i].simples.push_back(shapes[j].simples[0]);
        shapes.erase(shapes.begin() + std::ptrdiff_t(j));
        break;
      }
    }
  }

  CartanType out;
  for (auto& sh : shapes) {
    TypeComponent t = sh.type;
    if (bd_ambient) {
      if (t.family == Family::A && t.rank == 1) {
        LengthClass lc = rs.root(sh.simples[0]).length_class;
        // Table labeling: rank-1 subsystems follow the ambient convention
        // (B1 for the {+-e_i} pairs of B_n, C1 for the {+-2e_i} of C_n).
        if (ambient_family == Family::B && lc == LengthClass::Short)
          t.family = Family::B;
        if (ambient_family == Family::C && lc == LengthClass::Long)
          t.family = Family::C;
      } else if (t.family == Family::A && int(sh.support.size()) == t.rank) {
        t.family = Family::D;
      } else if (t.family == Family::B && t.rank == 2 &&
                 ambient_family == Family::C) {
        t.family = Family::C;
      }
    } else if (fg_ambient) {
      bool simply_laced = t.family == Family::A || t.family == Family::D ||
                          t.family == Family::E;
      if (simply_laced && sh.all_short) t.dec = Decoration::Tilde;
    }
    out.components.push_back(t);
  }
  out.normalize();
  return out;
}

std::vector<Subsystem> bds_children(const Subsystem& sub) {
  const RootSystem& rs = *sub.ambient;
  if (!rs.crystallographic())
    fail(ErrorKind::NotCrystallographic,
         "Borel-De Siebenthal step needs a crystallographic ambient");
  int rank = subsystem_rank(sub);
  auto comps = simple_components(sub);

  // Expansion of every member over the subsystem's simples, to read off
  // component membership and heights.
  std::vector<int> all_simples;
  for (const auto& c : comps)
    for (int s : c) all_simples.push_back(s);
  Mat basis(rs.rank(), int(all_simples.size()));
  for (std::size_t j = 0; j < all_simples.size(); ++j)
    basis.col(Eigen::Index(j)) = rs.root(all_simples[j]).simple_coords;

  std::vector<Subsystem> out;
  std::vector<Bitset128> seen;
  auto push = [&](const Subsystem& s) {
    for (const auto& b : seen)
      if (b == s.members) return;
    seen.push_back(s.members);
    out.push_back(s);
  };
  push(sub);

  for (std::size_t ci = 0; ci < comps.size(); ++ci) {
    const auto& comp = comps[ci];
    // Members of this component and their expansions over comp's simples.
    std::vector<int> members;
    std::vector<Vec> expansions;
    sub.members.for_each([&](int mIdx) {
      auto x = solve<Scalar>(basis, rs.root(mIdx).simple_coords);
      if (!x) fail(ErrorKind::Internal, "member outside simple span");
      // belongs to comp iff its support lies in comp's block
      bool in_comp = false, outside = false;
      std::size_t off = 0;
      for (std::size_t cj = 0; cj < comps.size(); ++cj) {
        for (std::size_t t = 0; t < comps[cj].size(); ++t) {
          if (!(*x)[Eigen::Index(off + t)].is_zero()) {
            if (cj == ci)
              in_comp = true;
            else
              outside = true;
          }
        }
        off += comps[cj].size();
      }
      if (in_comp && !outside) {
        std::size_t comp_off = 0;
        for (std::size_t cj = 0; cj < ci; ++cj) comp_off += comps[cj].size();
        Vec e(Eigen::Index(comp.size()));
        for (std::size_t t = 0; t < comp.size(); ++t)
          e[Eigen::Index(t)] = (*x)[Eigen::Index(comp_off + t)];
        members.push_back(mIdx);
        expansions.push_back(std::move(e));
      }
    });

    bool multi_length = false;
    for (std::size_t a = 1; a < members.size(); ++a)
      if (!(rs.root(members[a]).norm == rs.root(members[0]).norm))
        multi_length = true;

    for (int side = 0; side < (multi_length ? 2 : 1); ++side) {
      // Highest root of the component (side 0) or of its dual (side 1).
      int best = -1;
      Scalar best_h;
      for (std::size_t a = 0; a < members.size(); ++a) {
        Scalar h{};
        for (std::size_t t = 0; t < comp.size(); ++t) {
          Scalar coeff = expansions[a][Eigen::Index(t)];
          if (side == 1)
            coeff = coeff * rs.root(comp[t]).norm / rs.root(members[a]).norm;
          h += coeff;
        }
        if (best < 0 || (h - best_h).sign() > 0) {
          best = int(a);
          best_h = h;
        }
      }
      int theta = members[std::size_t(best)];

      std::vector<int> extended = comp;
      extended.push_back(theta);
      for (std::size_t del = 0; del < extended.size(); ++del) {
        std::vector<int> gens;
        for (std::size_t cj = 0; cj < comps.size(); ++cj)
          if (cj != ci)
            for (int s : comps[cj]) gens.push_back(s);
        for (std::size_t t = 0; t < extended.size(); ++t)
          if (t != del) gens.push_back(extended[t]);
        Subsystem child = reflection_closure(rs, gens);
        if (subsystem_rank(child) == rank) push(child);
      }
    }
  }
  return out;
}

}  // namespace reflectionlab
