#include "hflab/hfset.hpp"

#include <algorithm>
#include <cctype>
#include <limits>

#include "hflab/error.hpp"

namespace hflab {

struct HfSet::Node {
  std::vector<HfSet> members;
  std::optional<std::uint64_t> code;
  std::size_t rank = 0;
  std::size_t hash = 0;
};

const std::shared_ptr<const HfSet::Node>& HfSet::empty_node() {
  static const auto node = make_node({});
  return node;
}

std::shared_ptr<const HfSet::Node> HfSet::make_node(
    std::vector<HfSet> members) {
  auto node = std::make_shared<Node>();
  bool fits = true;
  std::uint64_t code = 0;
  std::size_t rank = 0;
  std::size_t h = 0x9e3779b97f4a7c15ULL ^ members.size();
  for (const HfSet& m : members) {
    auto c = m.code();
    if (!c || *c >= 64) {
      fits = false;
    } else {
      code |= std::uint64_t{1} << *c;
    }
    rank = std::max(rank, m.rank() + 1);
    h ^= m.hash() + 0x9e3779b9 + (h << 6) + (h >> 2);
  }
  if (fits) node->code = code;
  node->rank = rank;
  node->hash = h;
  node->members = std::move(members);
  return node;
}

HfSet::HfSet() : node_(empty_node()) {}

HfSet HfSet::from_sorted(std::vector<HfSet> members) {
  if (members.empty()) return HfSet();
  return HfSet(make_node(std::move(members)));
}

HfSet HfSet::of(std::vector<HfSet> members) {
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  return from_sorted(std::move(members));
}

std::span<const HfSet> HfSet::members() const { return node_->members; }

bool HfSet::contains(const HfSet& x) const {
  const auto& ms = node_->members;
  return std::binary_search(ms.begin(), ms.end(), x);
}

std::optional<std::uint64_t> HfSet::code() const { return node_->code; }

std::uint64_t HfSet::ackermann() const {
  if (!node_->code) {
    throw CodeOverflow("Ackermann code of " + str() + " exceeds 64 bits");
  }
  return *node_->code;
}

std::size_t HfSet::rank() const { return node_->rank; }
std::size_t HfSet::hash() const { return node_->hash; }

namespace {
void write_braces(const HfSet& x, std::string& out) {
  out.push_back('{');
  bool first = true;
  for (const HfSet& m : x.members()) {
    if (!first) out.push_back(',');
    first = false;
    write_braces(m, out);
  }
  out.push_back('}');
}
}  // namespace

std::string HfSet::str() const {
  std::string out;
  write_braces(*this, out);
  return out;
}

bool operator==(const HfSet& a, const HfSet& b) {
  if (a.node_ == b.node_) return true;
  if (a.node_->code && b.node_->code) return *a.node_->code == *b.node_->code;
  if (a.node_->hash != b.node_->hash || a.size() != b.size()) return false;
  return std::equal(a.node_->members.begin(), a.node_->members.end(),
                    b.node_->members.begin());
}

// code(a) < code(b) iff the Ackermann-largest member of the symmetric
// difference belongs to b. Walk both member lists from the top.
std::strong_ordering operator<=>(const HfSet& a, const HfSet& b) {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  if (a.node_->code && b.node_->code) return *a.node_->code <=> *b.node_->code;
  if (a.node_->rank != b.node_->rank) return a.node_->rank <=> b.node_->rank;
  const auto& am = a.node_->members;
  const auto& bm = b.node_->members;
  auto i = am.size();
  auto j = bm.size();
  while (i > 0 && j > 0) {
    auto c = am[i - 1] <=> bm[j - 1];
    if (c != 0) return c;
    --i;
    --j;
  }
  return i <=> j;
}

HfSet decode(std::uint64_t code) {
  std::vector<HfSet> members;
  for (unsigned bit = 0; bit < 64; ++bit) {
    if (code & (std::uint64_t{1} << bit)) members.push_back(decode(bit));
  }
  return HfSet::from_sorted(std::move(members));
}

namespace {

void skip_ws(std::string_view text, std::size_t& pos) {
  while (pos < text.size() &&
         std::isspace(static_cast<unsigned char>(text[pos]))) {
    ++pos;
  }
}

HfSet parse_braces(std::string_view text, std::size_t& pos) {
  // text[pos] == '{'
  ++pos;
  std::vector<HfSet> members;
  skip_ws(text, pos);
  if (pos < text.size() && text[pos] == '}') {
    ++pos;
    return HfSet();
  }
  while (true) {
    skip_ws(text, pos);
    members.push_back(parse_hfset_prefix(text, pos));
    skip_ws(text, pos);
    if (pos >= text.size()) throw ParseError("unterminated set literal", pos);
    if (text[pos] == ',') {
      ++pos;
      continue;
    }
    if (text[pos] == '}') {
      ++pos;
      break;
    }
    throw ParseError(std::string("unexpected '") + text[pos] +
                         "' in set literal",
                     pos);
  }
  return HfSet::of(std::move(members));
}

}  // namespace

HfSet parse_hfset_prefix(std::string_view text, std::size_t& pos) {
  skip_ws(text, pos);
  if (pos >= text.size()) throw ParseError("expected set literal", pos);
  if (text[pos] == '{') return parse_braces(text, pos);
  if (text[pos] == '#') {
    const std::size_t start = pos;
    ++pos;
    if (pos >= text.size() ||
        !std::isdigit(static_cast<unsigned char>(text[pos]))) {
      throw ParseError("expected digits after '#'", pos);
    }
    std::uint64_t n = 0;
    constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
    while (pos < text.size() &&
           std::isdigit(static_cast<unsigned char>(text[pos]))) {
      const auto d = static_cast<std::uint64_t>(text[pos] - '0');
      if (n > (kMax - d) / 10) {
        throw CodeOverflow("code at position " + std::to_string(start) +
                           " exceeds 64 bits");
      }
      n = n * 10 + d;
      ++pos;
    }
    return decode(n);
  }
  throw ParseError(std::string("unexpected '") + text[pos] +
                       "', expected '{' or '#'",
                   pos);
}

HfSet parse_hfset(std::string_view text) {
  std::size_t pos = 0;
  HfSet x = parse_hfset_prefix(text, pos);
  skip_ws(text, pos);
  if (pos != text.size()) throw ParseError("trailing input", pos);
  return x;
}

HfSet pair_set(const HfSet& x, const HfSet& y) { return HfSet::of({x, y}); }
HfSet singleton(const HfSet& x) { return HfSet::from_sorted({x}); }

HfSet ordered_pair(const HfSet& x, const HfSet& y) {
  return pair_set(singleton(x), pair_set(x, y));
}

HfSet successor(const HfSet& x) {
  // x < {x} in Ackermann order, and x is larger than each of its members.
  std::vector<HfSet> ms(x.members().begin(), x.members().end());
  ms.push_back(x);
  return HfSet::from_sorted(std::move(ms));
}

HfSet binary_union(const HfSet& x, const HfSet& y) {
  std::vector<HfSet> out;
  std::set_union(x.members().begin(), x.members().end(), y.members().begin(),
                 y.members().end(), std::back_inserter(out));
  return HfSet::from_sorted(std::move(out));
}

HfSet binary_intersection(const HfSet& x, const HfSet& y) {
  std::vector<HfSet> out;
  std::set_intersection(x.members().begin(), x.members().end(),
                        y.members().begin(), y.members().end(),
                        std::back_inserter(out));
  return HfSet::from_sorted(std::move(out));
}

HfSet set_difference(const HfSet& x, const HfSet& y) {
  std::vector<HfSet> out;
  std::set_difference(x.members().begin(), x.members().end(),
                      y.members().begin(), y.members().end(),
                      std::back_inserter(out));
  return HfSet::from_sorted(std::move(out));
}

HfSet von_neumann(std::size_t n) {
  HfSet x;
  for (std::size_t i = 0; i < n; ++i) x = successor(x);
  return x;
}

bool is_subset(const HfSet& x, const HfSet& y) {
  return std::includes(y.members().begin(), y.members().end(),
                       x.members().begin(), x.members().end());
}

HfSet big_union(const HfSet& x) {
  std::vector<HfSet> out;
  for (const HfSet& m : x.members()) {
    out.insert(out.end(), m.members().begin(), m.members().end());
  }
  return HfSet::of(std::move(out));
}

HfSet powerset(const HfSet& x, std::size_t bound) {
  if (x.size() > bound) {
    throw BoundExceeded("powerset refused: |x| = " + std::to_string(x.size()) +
                        " exceeds bound " + std::to_string(bound));
  }
  const auto ms = x.members();
  const std::size_t n = ms.size();
  std::vector<HfSet> subsets;
  subsets.reserve(std::size_t{1} << n);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    std::vector<HfSet> sub;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask & (std::uint64_t{1} << i)) sub.push_back(ms[i]);
    }
    subsets.push_back(HfSet::from_sorted(std::move(sub)));
  }
  std::sort(subsets.begin(), subsets.end());
  return HfSet::from_sorted(std::move(subsets));
}

HfSet separation(const HfSet& x,
                 const std::function<bool(const HfSet&)>& pred) {
  std::vector<HfSet> out;
  for (const HfSet& m : x.members()) {
    if (pred(m)) out.push_back(m);
  }
  return HfSet::from_sorted(std::move(out));
}

HfSet cartesian_product(const HfSet& x, const HfSet& y, std::size_t bound) {
  if (x.size() > bound || y.size() > bound) {
    throw BoundExceeded("cartesian product refused: factor larger than bound " +
                        std::to_string(bound));
  }
  std::vector<HfSet> out;
  out.reserve(x.size() * y.size());
  for (const HfSet& a : x.members()) {
    for (const HfSet& b : y.members()) out.push_back(ordered_pair(a, b));
  }
  return HfSet::of(std::move(out));
}

HfSet cartesian_product_by_filtration(const HfSet& x, const HfSet& y) {
  const HfSet u = binary_union(x, y);
  if (u.size() > 4) {
    throw BoundExceeded("filtration product needs |x u y| <= 4");
  }
  const HfSet pp = powerset(powerset(u), 16);
  return separation(pp, [&](const HfSet& p) {
    auto coords = as_ordered_pair(p);
    return coords && x.contains(coords->first) && y.contains(coords->second);
  });
}

std::optional<std::pair<HfSet, HfSet>> as_ordered_pair(const HfSet& p) {
  const auto ms = p.members();
  if (ms.size() == 1) {
    // {{a}} == (a, a)
    if (ms[0].size() != 1) return std::nullopt;
    const HfSet& a = ms[0].members()[0];
    return std::pair{a, a};
  }
  if (ms.size() != 2) return std::nullopt;
  const HfSet* single = nullptr;
  const HfSet* doubleton = nullptr;
  for (const HfSet& m : ms) {
    if (m.size() == 1) {
      single = &m;
    } else if (m.size() == 2) {
      doubleton = &m;
    }
  }
  if (!single || !doubleton) return std::nullopt;
  const HfSet& a = single->members()[0];
  if (!doubleton->contains(a)) return std::nullopt;
  const auto dm = doubleton->members();
  const HfSet& b = dm[0] == a ? dm[1] : dm[0];
  return std::pair{a, b};
}

bool is_transitive(const HfSet& x) {
  for (const HfSet& m : x.members()) {
    if (!is_subset(m, x)) return false;
  }
  return true;
}

bool is_ordinal(const HfSet& x) {
  if (!is_transitive(x)) return false;
  for (const HfSet& m : x.members()) {
    if (!is_transitive(m)) return false;
  }
  return true;
}

bool is_complete(const HfSet& x, std::size_t bound) {
  if (!is_transitive(x)) return false;
  for (const HfSet& m : x.members()) {
    if (m.size() > bound) {
      throw BoundExceeded("completeness check refused: member of size " +
                          std::to_string(m.size()));
    }
  }
  for (const HfSet& m : x.members()) {
    const HfSet subs = powerset(m, bound);
    for (const HfSet& sub : subs.members()) {
      if (!x.contains(sub)) return false;
    }
  }
  return true;
}

std::optional<HfSet> FnView::apply(const HfSet& arg) const {
  for (const HfSet& p : graph.members()) {
    auto c = as_ordered_pair(p);
    if (c && c->first == arg) return c->second;
  }
  return std::nullopt;
}

std::optional<FnView> try_fn_view(const HfSet& x) {
  std::vector<HfSet> dom;
  std::vector<HfSet> rng;
  for (const HfSet& p : x.members()) {
    auto c = as_ordered_pair(p);
    if (!c) return std::nullopt;
    dom.push_back(c->first);
    rng.push_back(c->second);
  }
  const std::size_t n = dom.size();
  FnView view{x, HfSet::of(std::move(dom)), HfSet::of(std::move(rng))};
  // Pairs are distinct members, so functionality is exactly |dom| == |graph|.
  if (view.domain.size() != n) return std::nullopt;
  return view;
}

FnView fn_view(const HfSet& x) {
  auto view = try_fn_view(x);
  if (!view) throw NotAFunction(x.str() + " is not a function");
  return *view;
}

bool is_function(const HfSet& x) { return try_fn_view(x).has_value(); }

Classification classify(const HfSet& x, std::size_t bound) {
  Classification c;
  c.transitive = is_transitive(x);
  c.complete = c.transitive && is_complete(x, bound);
  c.ordinal = is_ordinal(x);
  c.function = is_function(x);
  return c;
}

}  // namespace hflab
