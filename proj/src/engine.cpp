#include "reflectionlab/engine.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_set>

namespace reflectionlab {

namespace {

void check_same_ambient(const GroupElement& a, const GroupElement& b) {
  if (a.rs != b.rs)
    fail(ErrorKind::AmbientMismatch, "elements of different ambient systems");
}

std::pair<std::uint64_t, std::uint64_t> hash_bytes(const std::uint8_t* p,
                                                   std::size_t n) {
  std::uint64_t h1 = 0x243f6a8885a308d3ULL;
  std::uint64_t h2 = 0x13198a2e03707344ULL;
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    std::uint64_t chunk;
    __builtin_memcpy(&chunk, p + i, 8);
    h1 = detail::mix64(h1 ^ chunk);
    h2 = detail::mix64(h2 + chunk * 0x9e3779b97f4a7c15ULL);
  }
  std::uint64_t tail = 0;
  for (std::size_t k = 0; i + k < n; ++k)
    tail |= std::uint64_t(p[i + k]) << (8 * k);
  h1 = detail::mix64(h1 ^ tail ^ n);
  h2 = detail::mix64(h2 + tail);
  return {h1, h2};
}

std::uint64_t hash_bytes64(const std::uint8_t* p, std::size_t n) {
  auto [h1, h2] = hash_bytes(p, n);
  return h1 ^ (h2 * 0x9e3779b97f4a7c15ULL);
}

std::vector<int> cycle_type(const std::uint8_t* img, int n) {
  std::vector<int> type;
  std::vector<bool> seen(std::size_t(n), false);
  for (int i = 0; i < n; ++i) {
    if (seen[std::size_t(i)]) continue;
    int len = 0, j = i;
    while (!seen[std::size_t(j)]) {
      seen[std::size_t(j)] = true;
      j = img[j];
      ++len;
    }
    type.push_back(len);
  }
  std::sort(type.begin(), type.end());
  return type;
}

}  // namespace

GroupElement identity_element(const RootSystem& rs) {
  GroupElement g;
  g.rs = &rs;
  g.img.resize(std::size_t(rs.n_roots()));
  for (int i = 0; i < rs.n_roots(); ++i) g.img[std::size_t(i)] = std::uint8_t(i);
  return g;
}

GroupElement reflection_element(const RootSystem& rs, int positive_index) {
  if (positive_index < 0 || positive_index >= rs.n_positive())
    fail(ErrorKind::Internal, "bad reflection index");
  GroupElement g;
  g.rs = &rs;
  const std::uint8_t* row = rs.reflection_row(positive_index);
  g.img.assign(row, row + rs.n_roots());
  return g;
}

GroupElement compose(const GroupElement& a, const GroupElement& b) {
  check_same_ambient(a, b);
  GroupElement c;
  c.rs = a.rs;
  c.img.resize(a.img.size());
  for (std::size_t i = 0; i < a.img.size(); ++i)
    c.img[i] = a.img[b.img[i]];
  return c;
}

GroupElement inverse(const GroupElement& a) {
  GroupElement c;
  c.rs = a.rs;
  c.img.resize(a.img.size());
  for (std::size_t i = 0; i < a.img.size(); ++i)
    c.img[a.img[i]] = std::uint8_t(i);
  return c;
}

GroupElement conjugate(const GroupElement& a, const GroupElement& w) {
  check_same_ambient(a, w);
  GroupElement wi = inverse(w);
  GroupElement c;
  c.rs = a.rs;
  c.img.resize(a.img.size());
  for (std::size_t i = 0; i < a.img.size(); ++i)
    c.img[i] = wi.img[a.img[w.img[i]]];
  return c;
}

std::int64_t order(const GroupElement& a) {
  std::int64_t o = 1;
  for (int len : cycle_type(a.img.data(), int(a.img.size())))
    o = std::lcm(o, std::int64_t(len));
  return o;
}

Mat matrix_on_span(const GroupElement& a) {
  const RootSystem& rs = *a.rs;
  Mat m(rs.rank(), rs.rank());
  for (int j = 0; j < rs.rank(); ++j) {
    int image = a.img[std::size_t(rs.simple_indices()[std::size_t(j)])];
    m.col(j) = rs.root(image).simple_coords;
  }
  return m;
}

GroupElement product_of_reflections(const RootSystem& rs,
                                    const std::vector<int>& roots) {
  GroupElement g = identity_element(rs);
  for (int r : roots) g = compose(g, reflection_element(rs, r));
  return g;
}

std::string ClassFingerprint::serialize() const {
  std::string s = "o" + std::to_string(element_order);
  for (const auto& [k, type] : power_cycles) {
    s += "|" + std::to_string(k) + ":";
    for (std::size_t i = 0; i < type.size(); ++i) {
      if (i) s += ",";
      s += std::to_string(type[i]);
    }
  }
  s += "|p";
  for (const auto& c : char_poly) s += c.to_string() + ";";
  return s;
}

std::uint64_t ClassFingerprint::digest() const {
  std::string s = serialize();
  return hash_bytes64(reinterpret_cast<const std::uint8_t*>(s.data()),
                      s.size());
}

ClassFingerprint fingerprint(const GroupElement& a) {
  ClassFingerprint fp;
  fp.element_order = order(a);
  int n = int(a.img.size());
  GroupElement pk = identity_element(*a.rs);
  for (std::int64_t k = 1; k <= fp.element_order; ++k) {
    pk = compose(pk, a);
    if (fp.element_order % k == 0)
      fp.power_cycles.emplace_back(int(k), cycle_type(pk.img.data(), n));
  }
  fp.char_poly = char_poly(matrix_on_span(a));
  return fp;
}

Bitset128 conjugate_members(const RootSystem& rs, Bitset128 members,
                            const std::uint8_t* row) {
  Bitset128 out;
  const int n = rs.n_positive();
  members.for_each([&](int i) {
    int j = row[i];
    out.set(j < n ? j : j - n);
  });
  return out;
}

namespace {

struct OrbitData {
  Bitset128 canonical;
  std::vector<Bitset128> members;
};

OrbitData orbit_impl(const Subsystem& sub, const std::vector<int>& gen_roots,
                     std::int64_t budget) {
  const RootSystem& rs = *sub.ambient;
  std::vector<const std::uint8_t*> rows;
  for (int g : gen_roots) rows.push_back(rs.reflection_row(g));

  OrbitData data;
  std::unordered_set<Bitset128, Bitset128Hash> seen;
  seen.reserve(1024);
  std::vector<Bitset128> queue{sub.members};
  seen.insert(sub.members);
  data.canonical = sub.members;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    Bitset128 cur = queue[head];
    for (const auto* row : rows) {
      Bitset128 next = conjugate_members(rs, cur, row);
      if (seen.insert(next).second) {
        if (std::int64_t(seen.size()) > budget)
          fail(ErrorKind::OrbitBudgetExceeded,
               "orbit enumeration exceeded budget of " +
                   std::to_string(budget));
        queue.push_back(next);
        if (lex_less(next, data.canonical)) data.canonical = next;
      }
    }
  }
  data.members = std::move(queue);
  return data;
}

}  // namespace

CanonicalSubsystem subsystem_orbit(const Subsystem& sub,
                                   const std::vector<int>& generator_roots,
                                   std::int64_t budget) {
  OrbitData d = orbit_impl(sub, generator_roots, budget);
  return {d.canonical, std::int64_t(d.members.size())};
}

CanonicalSubsystem subsystem_orbit_members(
    const Subsystem& sub, const std::vector<int>& generator_roots,
    std::vector<Bitset128>& members_out, std::int64_t budget) {
  OrbitData d = orbit_impl(sub, generator_roots, budget);
  members_out = std::move(d.members);
  std::sort(members_out.begin(), members_out.end(), bits_less);
  return {d.canonical, std::int64_t(members_out.size())};
}

namespace {

struct SideState {
  // node storage: parent id and generator (index into the simple list)
  std::vector<std::uint32_t> parent;
  std::vector<std::uint8_t> gen;
  std::unordered_map<std::uint64_t, std::uint32_t> seen;  // hash -> node
  std::vector<std::vector<std::uint8_t>> level_elems;     // current level
  std::vector<std::uint32_t> level_ids;

  std::vector<int> word_to(std::uint32_t id) const {
    std::vector<int> w;
    while (id != 0) {
      w.push_back(gen[id]);
      id = parent[id];
    }
    std::reverse(w.begin(), w.end());
    return w;
  }
};

}  // namespace

ConjugacyResult are_conjugate(const GroupElement& a, const GroupElement& b,
                              std::int64_t budget) {
  check_same_ambient(a, b);
  const RootSystem& rs = *a.rs;
  ConjugacyResult res;
  if (a == b) {
    res.conjugate = true;
    res.witness = identity_element(rs);
    return res;
  }
  if (!(fingerprint(a) == fingerprint(b))) return res;

  const auto& simples = rs.simple_indices();
  std::vector<const std::uint8_t*> rows;
  for (int s : simples) rows.push_back(rs.reflection_row(s));
  const std::size_t deg = a.img.size();

  SideState side[2];
  const GroupElement* start[2] = {&a, &b};
  for (int s = 0; s < 2; ++s) {
    side[s].parent.push_back(0);
    side[s].gen.push_back(0);
    side[s].seen.emplace(hash_bytes64(start[s]->img.data(), deg), 0);
    side[s].level_elems.push_back(start[s]->img);
    side[s].level_ids.push_back(0);
  }

  auto finish = [&](int s, std::uint32_t my_id,
                    std::uint32_t other_id) -> ConjugacyResult {
    // words such that start[s]^u = start[1-s]^v
    std::vector<int> u = side[s].word_to(my_id);
    std::vector<int> v = side[1 - s].word_to(other_id);
    std::vector<int> word;  // for a-side: a^(u . reverse(v)) == b
    if (s == 0) {
      word = u;
      word.insert(word.end(), v.rbegin(), v.rend());
    } else {
      word = v;
      word.insert(word.end(), u.rbegin(), u.rend());
    }
    GroupElement w = identity_element(rs);
    std::vector<int> word_roots;
    for (int g : word) {
      word_roots.push_back(simples[std::size_t(g)]);
      w = compose(w, reflection_element(rs, simples[std::size_t(g)]));
    }
    GroupElement check = conjugate(a, w);
    if (!(check == b))
      fail(ErrorKind::Internal, "conjugacy witness failed verification");
    ConjugacyResult r;
    r.conjugate = true;
    r.witness = std::move(w);
    r.witness_word = std::move(word_roots);
    return r;
  };

  std::vector<std::uint8_t> buf(deg);
  while (true) {
    // expand the side with the smaller frontier
    int s = side[0].level_elems.size() <= side[1].level_elems.size() ? 0 : 1;
    if (side[s].level_elems.empty()) s = 1 - s;
    if (side[s].level_elems.empty()) return res;  // both exhausted: not conjugate

    std::vector<std::vector<std::uint8_t>> next_elems;
    std::vector<std::uint32_t> next_ids;
    for (std::size_t e = 0; e < side[s].level_elems.size(); ++e) {
      const auto& cur = side[s].level_elems[e];
      std::uint32_t cur_id = side[s].level_ids[e];
      for (std::size_t g = 0; g < rows.size(); ++g) {
        const std::uint8_t* row = rows[g];
        for (std::size_t i = 0; i < deg; ++i) buf[i] = row[cur[row[i]]];
        std::uint64_t h = hash_bytes64(buf.data(), deg);
        if (side[s].seen.count(h)) continue;
        std::uint32_t id = std::uint32_t(side[s].parent.size());
        side[s].parent.push_back(cur_id);
        side[s].gen.push_back(std::uint8_t(g));
        side[s].seen.emplace(h, id);
        auto other = side[1 - s].seen.find(h);
        if (other != side[1 - s].seen.end())
          return finish(s, id, other->second);
        next_elems.push_back(buf);
        next_ids.push_back(id);
        if (std::int64_t(side[0].parent.size() + side[1].parent.size()) >
            budget)
          fail(ErrorKind::SearchBudgetExceeded,
               "conjugacy search budget exceeded; frontiers " +
                   std::to_string(next_elems.size()) + " / " +
                   std::to_string(side[1 - s].level_elems.size()));
      }
    }
    side[s].level_elems = std::move(next_elems);
    side[s].level_ids = std::move(next_ids);
    if (side[s].level_elems.empty() && side[1 - s].level_elems.empty())
      return res;
    if (side[s].level_elems.empty()) {
      // this side's class is fully enumerated; the other start was never
      // found in it, so the elements are not conjugate
      return res;
    }
  }
}

GroupElement GroupEnumeration::element_at(std::uint32_t i) const {
  GroupElement g;
  g.rs = rs;
  const std::uint8_t* p = element(i);
  g.img.assign(p, p + degree);
  return g;
}

std::int64_t GroupEnumeration::find(const GroupElement& g) const {
  auto it = index.find(hash_bytes64(g.img.data(), g.img.size()));
  if (it == index.end()) return -1;
  if (__builtin_memcmp(element(it->second), g.img.data(), g.img.size()) != 0)
    return -1;
  return it->second;
}

GroupEnumeration enumerate_group(const RootSystem& rs, std::int64_t cap) {
  GroupEnumeration en;
  en.rs = &rs;
  en.degree = rs.n_roots();
  const std::size_t deg = std::size_t(en.degree);

  std::vector<const std::uint8_t*> rows;
  for (int s : rs.simple_indices()) rows.push_back(rs.reflection_row(s));

  auto push = [&](const std::uint8_t* img) -> std::int64_t {
    std::uint64_t h = hash_bytes64(img, deg);
    auto it = en.index.find(h);
    if (it != en.index.end()) {
      if (__builtin_memcmp(en.elements.data() + std::size_t(it->second) * deg,
                           img, deg) != 0)
        fail(ErrorKind::Internal, "element hash collision");
      return it->second;
    }
    std::uint32_t id = std::uint32_t(en.elements.size() / deg);
    en.elements.insert(en.elements.end(), img, img + deg);
    en.index.emplace(h, id);
    return -1 - std::int64_t(id);  // negative marks "new"
  };

  GroupElement id = identity_element(rs);
  push(id.img.data());
  std::vector<std::uint8_t> buf(deg);
  for (std::size_t head = 0; head * deg < en.elements.size(); ++head) {
    if (std::int64_t(head) > cap)
      fail(ErrorKind::GroupTooLarge, "group larger than cap");
    const std::uint8_t* cur = en.elements.data() + head * deg;
    for (const auto* row : rows) {
      for (std::size_t i = 0; i < deg; ++i) buf[i] = cur[row[i]];
      push(buf.data());
      if (std::int64_t(en.elements.size() / deg) > cap)
        fail(ErrorKind::GroupTooLarge, "group larger than cap of " +
                                           std::to_string(cap));
    }
  }
  const std::size_t n = en.elements.size() / deg;

  // conjugacy classes by closure under generator conjugation
  en.class_of.assign(n, UINT32_MAX);
  for (std::uint32_t e = 0; e < n; ++e) {
    if (en.class_of[e] != UINT32_MAX) continue;
    std::uint32_t cls = std::uint32_t(en.class_reps.size());
    en.class_reps.push_back(e);
    en.class_sizes.push_back(0);
    std::vector<std::uint32_t> stack{e};
    en.class_of[e] = cls;
    while (!stack.empty()) {
      std::uint32_t x = stack.back();
      stack.pop_back();
      ++en.class_sizes[cls];
      const std::uint8_t* xi = en.elements.data() + std::size_t(x) * deg;
      for (const auto* row : rows) {
        for (std::size_t i = 0; i < deg; ++i) buf[i] = row[xi[row[i]]];
        auto it = en.index.find(hash_bytes64(buf.data(), deg));
        if (it == en.index.end())
          fail(ErrorKind::Internal, "conjugate escaped the enumerated group");
        if (en.class_of[it->second] == UINT32_MAX) {
          en.class_of[it->second] = cls;
          stack.push_back(it->second);
        }
      }
    }
  }
  return en;
}

std::vector<ClassSummary> enumerate_classes(const RootSystem& rs,
                                            std::int64_t cap) {
  GroupEnumeration en = enumerate_group(rs, cap);
  std::vector<ClassSummary> out;
  for (std::size_t c = 0; c < en.class_reps.size(); ++c) {
    ClassSummary s;
    s.fingerprint = fingerprint(en.element_at(en.class_reps[c]));
    s.size = en.class_sizes[c];
    out.push_back(std::move(s));
  }
  std::sort(out.begin(), out.end(), [](const ClassSummary& a,
                                       const ClassSummary& b) {
    if (a.size != b.size) return a.size < b.size;
    return a.fingerprint.serialize() < b.fingerprint.serialize();
  });
  return out;
}

int reflection_class_count(const RootSystem& rs) {
  int n = rs.n_positive();
  std::vector<int> comp(std::size_t(n), -1);
  int ncomp = 0;
  for (int i = 0; i < n; ++i) {
    if (comp[std::size_t(i)] >= 0) continue;
    std::vector<int> stack{i};
    comp[std::size_t(i)] = ncomp;
    while (!stack.empty()) {
      int x = stack.back();
      stack.pop_back();
      for (int s : rs.simple_indices()) {
        int y = rs.positive_of(rs.reflect_index(s, x));
        if (comp[std::size_t(y)] < 0) {
          comp[std::size_t(y)] = ncomp;
          stack.push_back(y);
        }
      }
    }
    ++ncomp;
  }
  return ncomp;
}

AdequacyReport fingerprint_adequacy_audit(const RootSystem& rs,
                                          std::int64_t cap) {
  GroupEnumeration en = enumerate_group(rs, cap);
  AdequacyReport rep;
  rep.n_classes = std::int64_t(en.class_reps.size());
  std::unordered_map<std::string, std::vector<std::uint32_t>> buckets;
  for (std::uint32_t c = 0; c < en.class_reps.size(); ++c) {
    ClassFingerprint fp = fingerprint(en.element_at(en.class_reps[c]));
    buckets[fp.serialize()].push_back(c);
  }
  rep.n_buckets = std::int64_t(buckets.size());
  for (auto& [key, classes] : buckets) {
    if (classes.size() < 2) continue;
    rep.adequate = false;
    std::sort(classes.begin(), classes.end());
    for (std::size_t i = 0; i + 1 < classes.size(); ++i)
      rep.merged.emplace_back(en.class_reps[classes[i]],
                              en.class_reps[classes[i + 1]]);
  }
  std::sort(rep.merged.begin(), rep.merged.end());
  return rep;
}

}  // namespace reflectionlab
