#include "gradedvb/partitions.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <map>
#include <sstream>

#include "gradedvb/config.hpp"
#include "gradedvb/errors.hpp"

namespace gvb {

// ---------------------------------------------------------------- Subset

namespace {
std::uint32_t bit_of(int i) {
  if (i < 1 || i > 32) throw DomainError("subset element out of range: " + std::to_string(i));
  return 1u << (i - 1);
}
}  // namespace

Subset::Subset(std::initializer_list<int> elems) {
  for (int e : elems) {
    if (mask_ & bit_of(e)) throw InvalidPartition("repeated element " + std::to_string(e));
    mask_ |= bit_of(e);
  }
}

Subset::Subset(const std::vector<int>& elems) {
  for (int e : elems) {
    if (mask_ & bit_of(e)) throw InvalidPartition("repeated element " + std::to_string(e));
    mask_ |= bit_of(e);
  }
}

Subset Subset::range(int first, int last) {
  Subset s;
  for (int i = first; i <= last; ++i) s.mask_ |= bit_of(i);
  return s;
}

int Subset::size() const { return std::popcount(mask_); }

int Subset::min() const {
  if (mask_ == 0) throw DomainError("min of the empty set");
  return std::countr_zero(mask_) + 1;
}

int Subset::max() const {
  if (mask_ == 0) throw DomainError("max of the empty set");
  return 32 - std::countl_zero(mask_);
}

std::vector<int> Subset::elements() const {
  std::vector<int> out;
  for (std::uint32_t m = mask_; m != 0; m &= m - 1) out.push_back(std::countr_zero(m) + 1);
  return out;
}

std::string Subset::to_string() const {
  if (empty()) return "{}";
  std::string s;
  for (int e : elements()) {
    if (!s.empty()) s += ',';
    s += std::to_string(e);
  }
  return s;
}

bool canonical_less(const Subset& a, const Subset& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  // For equal cardinalities the lexicographic order of the sorted element
  // lists is decided by the smallest element of the symmetric difference.
  std::uint32_t diff = a.mask() ^ b.mask();
  if (diff == 0) return false;
  std::uint32_t low = diff & (~diff + 1);
  return (a.mask() & low) != 0;
}

std::vector<Subset> subsets_of(const Subset& s, bool include_empty) {
  std::vector<Subset> out;
  std::uint32_t m = s.mask();
  // Enumerate all submasks.
  for (std::uint32_t sub = m;; sub = (sub - 1) & m) {
    if (sub != 0 || include_empty) out.push_back(Subset::from_mask(sub));
    if (sub == 0) break;
  }
  std::sort(out.begin(), out.end(), canonical_less);
  return out;
}

// ----------------------------------------------------------- Permutation

Permutation::Permutation(std::vector<int> images) : images_(std::move(images)) {
  const int n = static_cast<int>(images_.size());
  std::vector<bool> seen(n + 1, false);
  for (int v : images_) {
    if (v < 1 || v > n || seen[v]) throw DomainError("not a permutation: " + to_string());
    seen[v] = true;
  }
}

Permutation Permutation::identity(int n) {
  std::vector<int> im(n);
  for (int i = 0; i < n; ++i) im[i] = i + 1;
  return Permutation(std::move(im));
}

Permutation Permutation::transposition(int n, int a, int b) {
  std::vector<int> im(n);
  for (int i = 0; i < n; ++i) im[i] = i + 1;
  if (a < 1 || a > n || b < 1 || b > n) throw DomainError("transposition outside S_n");
  std::swap(im[a - 1], im[b - 1]);
  return Permutation(std::move(im));
}

Subset Permutation::operator()(const Subset& s) const {
  std::uint32_t m = 0;
  for (int e : s.elements()) {
    if (e > n()) throw DomainError("element " + std::to_string(e) + " outside S_" + std::to_string(n()));
    m |= 1u << (images_[e - 1] - 1);
  }
  return Subset::from_mask(m);
}

Permutation Permutation::inverse() const {
  std::vector<int> inv(images_.size());
  for (std::size_t i = 0; i < images_.size(); ++i) inv[images_[i] - 1] = static_cast<int>(i) + 1;
  return Permutation(std::move(inv));
}

bool Permutation::is_identity() const {
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (images_[i] != static_cast<int>(i) + 1) return false;
  }
  return true;
}

std::string Permutation::to_string() const {
  std::string s;
  for (int v : images_) {
    if (!s.empty()) s += ',';
    s += std::to_string(v);
  }
  return s;
}

Permutation operator*(const Permutation& a, const Permutation& b) {
  if (a.n() != b.n()) throw DomainError("composing permutations of different degree");
  std::vector<int> im(a.n());
  for (int i = 1; i <= a.n(); ++i) im[i - 1] = a(b(i));
  return Permutation(std::move(im));
}

std::vector<Permutation> all_permutations(int n) {
  check_n(n);
  std::vector<int> im(n);
  for (int i = 0; i < n; ++i) im[i] = i + 1;
  std::vector<Permutation> out;
  do {
    out.emplace_back(im);
  } while (std::next_permutation(im.begin(), im.end()));
  return out;
}

// ------------------------------------------------------ OrderedPartition

Subset OrderedPartition::ambient() const {
  Subset u;
  for (const auto& b : blocks) u = u | b;
  return u;
}

bool OrderedPartition::is_canonical() const {
  for (std::size_t i = 1; i < blocks.size(); ++i) {
    if (!canonical_less(blocks[i - 1], blocks[i])) return false;
  }
  return true;
}

std::string OrderedPartition::to_string() const {
  std::string s;
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    if (i) s += '|';
    s += blocks[i].to_string();
  }
  return s;
}

bool OrderedPartition::operator<(const OrderedPartition& o) const {
  if (blocks.size() != o.blocks.size()) return blocks.size() < o.blocks.size();
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    if (blocks[i] != o.blocks[i]) return blocks[i].mask() < o.blocks[i].mask();
  }
  return false;
}

OrderedPartition make_partition(std::vector<Subset> blocks) {
  Subset seen;
  for (const auto& b : blocks) {
    if (b.empty()) throw InvalidPartition("empty block");
    if (!b.disjoint(seen)) throw InvalidPartition("overlapping blocks at " + b.to_string());
    seen = seen | b;
  }
  return OrderedPartition{std::move(blocks)};
}

OrderedPartition canonical_order(std::vector<Subset> blocks) {
  OrderedPartition rho = make_partition(std::move(blocks));
  std::sort(rho.blocks.begin(), rho.blocks.end(), canonical_less);
  return rho;
}

OrderedPartition apply(const Permutation& sigma, const OrderedPartition& rho) {
  OrderedPartition out;
  out.blocks.reserve(rho.blocks.size());
  for (const auto& b : rho.blocks) out.blocks.push_back(sigma(b));
  return out;
}

// ------------------------------------------------------ integer lists

int sum(const IntegerPartition& p) {
  int s = 0;
  for (int x : p) s += x;
  return s;
}

std::string to_string(const IntegerPartition& p) {
  std::string s;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(p[i]);
  }
  return s;
}

namespace {
std::vector<std::string> split_on(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : text) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else if (c != ' ') {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

int parse_positive(const std::string& tok, const std::string& context) {
  if (tok.empty()) throw ParseError(context, "empty entry");
  for (char c : tok) {
    if (c < '0' || c > '9') throw ParseError(context, "'" + tok + "' is not a positive integer");
  }
  if (tok.size() > 6) throw ParseError(context, "'" + tok + "' is too large");
  int v = std::stoi(tok);
  if (v < 1) throw ParseError(context, "'" + tok + "' is not a positive integer");
  return v;
}
}  // namespace

IntegerPartition parse_integer_partition(const std::string& text) {
  IntegerPartition p;
  for (const auto& tok : split_on(text, ',')) p.push_back(parse_positive(tok, "integer partition '" + text + "'"));
  return p;
}

OrderedPartition parse_partition(const std::string& text) {
  std::vector<Subset> blocks;
  const std::string ctx = "partition '" + text + "'";
  for (const auto& blk : split_on(text, '|')) {
    std::vector<int> elems;
    for (const auto& tok : split_on(blk, ',')) {
      int v = parse_positive(tok, ctx);
      if (v > 32) throw ParseError(ctx, "element " + tok + " exceeds 32");
      elems.push_back(v);
    }
    try {
      blocks.emplace_back(elems);
    } catch (const Error& e) {
      throw ParseError(ctx, e.what());
    }
  }
  try {
    return make_partition(std::move(blocks));
  } catch (const InvalidPartition& e) {
    throw ParseError(ctx, e.what());
  }
}

Permutation parse_permutation(const std::string& text) {
  std::vector<int> im;
  for (const auto& tok : split_on(text, ',')) im.push_back(parse_positive(tok, "permutation '" + text + "'"));
  try {
    return Permutation(std::move(im));
  } catch (const Error& e) {
    throw ParseError("permutation '" + text + "'", e.what());
  }
}

IntegerPartition block_sizes(const OrderedPartition& rho) {
  IntegerPartition p;
  p.reserve(rho.blocks.size());
  for (const auto& b : rho.blocks) p.push_back(b.size());
  return p;
}

// ---------------------------------------------------------------- signs

int epsilon(const Permutation& sigma, const Subset& I) {
  auto el = I.elements();
  int inversions = 0;
  for (std::size_t a = 0; a < el.size(); ++a) {
    for (std::size_t b = a + 1; b < el.size(); ++b) {
      if (sigma(el[a]) > sigma(el[b])) ++inversions;
    }
  }
  return (inversions % 2) ? -1 : 1;
}

int sgn(const OrderedPartition& rho) {
  std::vector<int> seq;
  for (const auto& b : rho.blocks) {
    auto el = b.elements();
    seq.insert(seq.end(), el.begin(), el.end());
  }
  int inversions = 0;
  for (std::size_t a = 0; a < seq.size(); ++a) {
    for (std::size_t b = a + 1; b < seq.size(); ++b) {
      if (seq[a] > seq[b]) ++inversions;
    }
  }
  return (inversions % 2) ? -1 : 1;
}

OrderedPartition canonical_partition(const IntegerPartition& p) {
  OrderedPartition rho;
  int next = 1;
  for (int part : p) {
    if (part < 1) throw DomainError("integer partition with a non-positive part");
    rho.blocks.push_back(Subset::range(next, next + part - 1));
    next += part;
  }
  return rho;
}

// ------------------------------------------------------- enumerations

std::vector<IntegerPartition> integer_partitions_of(int k) {
  std::vector<IntegerPartition> out;
  IntegerPartition cur;
  std::function<void(int, int)> rec = [&](int remaining, int min_part) {
    if (remaining == 0) {
      out.push_back(cur);
      return;
    }
    for (int part = min_part; part <= remaining; ++part) {
      cur.push_back(part);
      rec(remaining - part, part);
      cur.pop_back();
    }
  };
  if (k >= 1) rec(k, 1);
  return out;
}

std::vector<IntegerPartition> integer_partitions(int n) {
  check_n(n);
  std::vector<IntegerPartition> out;
  for (int j = 1; j <= n; ++j) {
    auto pj = integer_partitions_of(j);
    out.insert(out.end(), pj.begin(), pj.end());
  }
  return out;
}

namespace {
// Set partitions of the index set {0..m-1}, as restricted growth strings.
std::vector<std::vector<std::vector<int>>> index_set_partitions(int m) {
  std::vector<std::vector<std::vector<int>>> out;
  std::vector<std::vector<int>> groups;
  std::function<void(int)> rec = [&](int i) {
    if (i == m) {
      out.push_back(groups);
      return;
    }
    for (std::size_t g = 0; g < groups.size(); ++g) {
      groups[g].push_back(i);
      rec(i + 1);
      groups[g].pop_back();
    }
    groups.push_back({i});
    rec(i + 1);
    groups.pop_back();
  };
  rec(0);
  return out;
}

bool partition_listing_less(const OrderedPartition& a, const OrderedPartition& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a.blocks[i] != b.blocks[i]) return canonical_less(a.blocks[i], b.blocks[i]);
  }
  return false;
}
}  // namespace

std::vector<OrderedPartition> set_partitions(const Subset& I) {
  auto el = I.elements();
  std::vector<OrderedPartition> out;
  if (el.empty()) return out;
  for (const auto& groups : index_set_partitions(static_cast<int>(el.size()))) {
    std::vector<Subset> blocks;
    for (const auto& g : groups) {
      std::uint32_t m = 0;
      for (int idx : g) m |= 1u << (el[idx] - 1);
      blocks.push_back(Subset::from_mask(m));
    }
    out.push_back(canonical_order(std::move(blocks)));
  }
  std::sort(out.begin(), out.end(), partition_listing_less);
  return out;
}

std::vector<OrderedPartition> coarsements(const OrderedPartition& rho) {
  std::vector<OrderedPartition> out;
  const int l = static_cast<int>(rho.size());
  if (l == 0) return out;
  for (const auto& groups : index_set_partitions(l)) {
    std::vector<Subset> blocks;
    for (const auto& g : groups) {
      Subset u;
      for (int idx : g) u = u | rho.blocks[idx];
      blocks.push_back(u);
    }
    out.push_back(canonical_order(std::move(blocks)));
  }
  std::sort(out.begin(), out.end(), partition_listing_less);
  return out;
}

OrderedPartition intersect_partition(const OrderedPartition& rho, const Subset& J) {
  std::vector<Subset> blocks;
  Subset covered;
  for (const auto& b : rho.blocks) {
    if (b.subset_of(J)) {
      blocks.push_back(b);
      covered = covered | b;
    } else if (!b.disjoint(J)) {
      throw DomainError(J.to_string() + " is not a union of blocks of " + rho.to_string());
    }
  }
  if (covered != J) throw DomainError(J.to_string() + " is not covered by " + rho.to_string());
  return canonical_order(std::move(blocks));
}

std::vector<Subset> cube_objects(const OrderedPartition& rho) {
  const std::size_t l = rho.size();
  std::vector<Subset> out;
  out.reserve(std::size_t{1} << l);
  for (std::uint32_t sel = 0; sel < (1u << l); ++sel) {
    Subset u;
    for (std::size_t i = 0; i < l; ++i) {
      if ((sel >> i) & 1u) u = u | rho.blocks[i];
    }
    out.push_back(u);
  }
  std::sort(out.begin(), out.end(), canonical_less);
  return out;
}

bool is_cube_object(const OrderedPartition& rho, const Subset& s) {
  for (const auto& b : rho.blocks) {
    if (!b.subset_of(s) && !b.disjoint(s)) return false;
  }
  return s.subset_of(rho.ambient());
}

OrderedPartition cube_intersection(const OrderedPartition& rho_ij, const OrderedPartition& rho_rs) {
  if (rho_ij.ambient() != rho_rs.ambient()) {
    throw DomainError("partitions of different sets: " + rho_ij.to_string() + " and " + rho_rs.to_string());
  }
  if (canonical_order(rho_ij.blocks) == canonical_order(rho_rs.blocks)) {
    throw DomainError("the two coarsements coincide: " + rho_ij.to_string());
  }
  if (rho_ij.size() != rho_rs.size()) {
    throw DomainError("coarsements with different numbers of blocks");
  }
  // The common l-partition is the meet of the two.
  std::vector<Subset> meet;
  for (const auto& a : rho_ij.blocks) {
    for (const auto& b : rho_rs.blocks) {
      Subset c = a & b;
      if (!c.empty()) meet.push_back(c);
    }
  }
  OrderedPartition rho = canonical_order(std::move(meet));
  if (rho.size() != rho_ij.size() + 1) {
    throw DomainError(rho_ij.to_string() + " and " + rho_rs.to_string() +
                      " are not (l-1)-coarsements of a common l-partition");
  }
  // Identify the merged pairs {i,j} and {r,s} as indices into rho.
  auto merged_pair = [&rho](const OrderedPartition& c) {
    for (const auto& blk : c.blocks) {
      std::vector<int> inside;
      for (std::size_t k = 0; k < rho.size(); ++k) {
        if (rho.blocks[k].subset_of(blk)) inside.push_back(static_cast<int>(k));
      }
      if (inside.size() == 2) return std::pair<int, int>{inside[0], inside[1]};
    }
    throw DomainError("no merged pair found");
  };
  auto [i, j] = merged_pair(rho_ij);
  auto [r, s] = merged_pair(rho_rs);
  std::vector<Subset> blocks;
  if (i == r || i == s || j == r || j == s) {
    // Two merges sharing an index: the three blocks become one.
    Subset merged = rho.blocks[i] | rho.blocks[j] | rho.blocks[r] | rho.blocks[s];
    blocks.push_back(merged);
    for (std::size_t k = 0; k < rho.size(); ++k) {
      int kk = static_cast<int>(k);
      if (kk != i && kk != j && kk != r && kk != s) blocks.push_back(rho.blocks[k]);
    }
  } else {
    blocks.push_back(rho.blocks[i] | rho.blocks[j]);
    blocks.push_back(rho.blocks[r] | rho.blocks[s]);
    for (std::size_t k = 0; k < rho.size(); ++k) {
      int kk = static_cast<int>(k);
      if (kk != i && kk != j && kk != r && kk != s) blocks.push_back(rho.blocks[k]);
    }
  }
  return canonical_order(std::move(blocks));
}

// --------------------------------------------------------------- splits

std::vector<OrderedPartition> Split::parts(const OrderedPartition& K) const {
  std::vector<OrderedPartition> out;
  for (const auto& g : groups) {
    OrderedPartition part;
    for (int idx : g) part.blocks.push_back(K.blocks.at(idx));
    out.push_back(std::move(part));
  }
  return out;
}

std::vector<Subset> Split::unions(const OrderedPartition& K) const {
  std::vector<Subset> out;
  for (const auto& g : groups) {
    Subset u;
    for (int idx : g) u = u | K.blocks.at(idx);
    out.push_back(u);
  }
  return out;
}

namespace {
int split_sign(const OrderedPartition& K, const std::vector<std::vector<int>>& groups) {
  OrderedPartition concat;
  for (const auto& g : groups) {
    for (int idx : g) concat.blocks.push_back(K.blocks[idx]);
  }
  return sgn(concat);
}

bool unions_increasing(const OrderedPartition& K, const std::vector<std::vector<int>>& groups) {
  Split tmp{groups, 1};
  auto u = tmp.unions(K);
  for (std::size_t i = 1; i < u.size(); ++i) {
    if (!canonical_less(u[i - 1], u[i])) return false;
  }
  return true;
}
}  // namespace

SplitSet enumerate_splits(const std::vector<IntegerPartition>& p_list, bool increasing_unions) {
  SplitSet result;
  for (const auto& pj : p_list) {
    if (pj.empty()) throw DomainError("empty integer partition in split enumeration");
    result.p.insert(result.p.end(), pj.begin(), pj.end());
  }
  std::sort(result.p.begin(), result.p.end());
  result.K = canonical_partition(result.p);
  const int s = static_cast<int>(result.p.size());
  const int l = static_cast<int>(p_list.size());

  // need[j][d] = remaining number of degree-d slots group j must receive.
  std::vector<std::map<int, int>> need(l);
  for (int j = 0; j < l; ++j) {
    for (int d : p_list[j]) ++need[j][d];
  }
  std::vector<std::vector<int>> groups(l);
  std::function<void(int)> rec = [&](int slot) {
    if (slot == s) {
      if (increasing_unions && !unions_increasing(result.K, groups)) return;
      result.splits.push_back(Split{groups, split_sign(result.K, groups)});
      return;
    }
    const int d = result.p[slot];
    for (int j = 0; j < l; ++j) {
      auto it = need[j].find(d);
      if (it == need[j].end() || it->second == 0) continue;
      --it->second;
      groups[j].push_back(slot);
      rec(slot + 1);
      groups[j].pop_back();
      ++it->second;
    }
  };
  rec(0);
  return result;
}

std::vector<Split> block_groupings(const IntegerPartition& p) {
  OrderedPartition K = canonical_partition(p);
  std::vector<Split> out;
  for (auto groups : index_set_partitions(static_cast<int>(p.size()))) {
    Split tmp{groups, 1};
    auto u = tmp.unions(K);
    std::vector<int> order(groups.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    std::sort(order.begin(), order.end(), [&u](int a, int b) { return canonical_less(u[a], u[b]); });
    std::vector<std::vector<int>> sorted;
    for (int idx : order) sorted.push_back(groups[idx]);
    out.push_back(Split{sorted, split_sign(K, sorted)});
  }
  return out;
}

}  // namespace gvb
