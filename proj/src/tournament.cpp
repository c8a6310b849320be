#include "kzmc/tournament.hpp"

#include <algorithm>
#include <cctype>
#include <set>

namespace kzmc {

std::string to_string(Label label) {
  return label.is_infinity() ? std::string("inf") : std::to_string(label.index());
}

LabelSet::LabelSet(std::initializer_list<unsigned> labels) {
  for (unsigned l : labels) *this = with(l);
}

LabelSet LabelSet::range(unsigned n) {
  if (n > max_labels) throw domain_error("label set: at most 64 labels");
  return LabelSet(n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1);
}

LabelSet LabelSet::singleton(unsigned label) {
  if (label >= max_labels) throw domain_error("label " + std::to_string(label) + " out of range");
  return LabelSet(std::uint64_t{1} << label);
}

unsigned LabelSet::min() const {
  if (empty()) throw domain_error("label set: min of empty set");
  return static_cast<unsigned>(std::countr_zero(bits_));
}

unsigned LabelSet::max() const {
  if (empty()) throw domain_error("label set: max of empty set");
  return 63U - static_cast<unsigned>(std::countl_zero(bits_));
}

std::vector<unsigned> LabelSet::elements() const {
  std::vector<unsigned> out;
  for (std::uint64_t b = bits_; b != 0; b &= b - 1) out.push_back(static_cast<unsigned>(std::countr_zero(b)));
  return out;
}

bool canonical_less(LabelSet a, LabelSet b) {
  if (a.size() != b.size()) return a.size() > b.size();
  return a.elements() < b.elements();
}

std::string to_string(LabelSet set) {
  std::string out = "{";
  bool first = true;
  for (unsigned l : set.elements()) {
    if (!first) out += ",";
    first = false;
    out += std::to_string(l);
  }
  return out + "}";
}

namespace {

class Scanner {
 public:
  explicit Scanner(std::string_view text) : text_(text) {}

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool done() {
    skip_space();
    return pos_ >= text_.size();
  }
  bool peek(char c) {
    skip_space();
    return pos_ < text_.size() && text_[pos_] == c;
  }
  void expect(char c) {
    if (!peek(c)) fail(std::string("expected '") + c + "'");
    ++pos_;
  }
  unsigned number() {
    skip_space();
    const std::size_t start = pos_;
    unsigned long value = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      value = value * 10 + static_cast<unsigned long>(text_[pos_] - '0');
      if (value >= max_labels) {
        pos_ = start;
        fail("label out of range (0..63)");
      }
      ++pos_;
    }
    if (pos_ == start) fail("expected a label");
    return static_cast<unsigned>(value);
  }
  LabelSet label_set() {
    expect('{');
    LabelSet set;
    if (!peek('}')) {
      for (;;) {
        const std::size_t at = pos_;
        const unsigned l = number();
        if (set.contains(l)) {
          pos_ = at;
          fail("repeated label " + std::to_string(l));
        }
        set = set.with(l);
        if (peek('}')) break;
        expect(',');
      }
    }
    expect('}');
    return set;
  }
  [[noreturn]] void fail(const std::string& message) const {
    std::size_t line = 1;
    std::size_t column = 1;
    for (std::size_t i = 0; i < pos_ && i < text_.size(); ++i) {
      if (text_[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw parse_error(message, line, column);
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

LabelSet parse_label_set(std::string_view text) {
  Scanner s(text);
  LabelSet set = s.label_set();
  if (!s.done()) s.fail("trailing characters after label set");
  return set;
}

std::vector<LabelSet> parse_member_list(std::string_view text) {
  Scanner s(text);
  std::vector<LabelSet> out;
  if (s.done()) return out;
  for (;;) {
    out.push_back(s.label_set());
    if (s.done()) break;
    s.expect(';');
  }
  return out;
}

MaximalCommutingFamily::MaximalCommutingFamily(LabelSet labels, std::vector<LabelSet> members)
    : labels_(labels), members_(std::move(members)) {
  if (labels_.size() < 2) throw domain_error("family: need at least two labels");
  for (LabelSet m : members_) {
    if (m.size() < 2) throw domain_error("family: member " + to_string(m) + " has fewer than two labels");
    if (!labels_.includes(m)) throw domain_error("family: member " + to_string(m) + " is not a subset of " + to_string(labels_));
  }
  std::sort(members_.begin(), members_.end(), canonical_less);
  for (std::size_t i = 0; i < members_.size(); ++i)
    for (std::size_t j = i + 1; j < members_.size(); ++j) {
      if (members_[i] == members_[j]) throw domain_error("family: repeated member " + to_string(members_[i]));
      if (!commutes(members_[i], members_[j]))
        throw domain_error("family: members " + to_string(members_[i]) + " and " + to_string(members_[j]) +
                           " overlap without nesting");
    }
  if (members_.size() != labels_.size() - 1 || members_.front() != labels_)
    throw domain_error("family: not maximal over " + to_string(labels_));

  for (LabelSet m : members_) {
    std::vector<LabelSet> parts;
    LabelSet covered;
    for (LabelSet j : members_) {
      if (!m.strictly_includes(j)) continue;
      bool top = true;
      for (LabelSet k : members_)
        if (m.strictly_includes(k) && k.strictly_includes(j)) top = false;
      if (top) {
        parts.push_back(j);
        covered = covered | j;
      }
    }
    for (unsigned l : (m - covered).elements()) parts.push_back(LabelSet::singleton(l));
    if (parts.size() != 2) throw domain_error("family: member " + to_string(m) + " does not split in two");
    if (parts[1].min() < parts[0].min()) std::swap(parts[0], parts[1]);
    children_.emplace_back(parts[0], parts[1]);
  }
}

bool MaximalCommutingFamily::contains(LabelSet member) const {
  return std::find(members_.begin(), members_.end(), member) != members_.end();
}

std::size_t MaximalCommutingFamily::index_of(LabelSet member) const {
  auto it = std::find(members_.begin(), members_.end(), member);
  if (it == members_.end()) throw domain_error("family: " + to_string(member) + " is not a member");
  return static_cast<std::size_t>(it - members_.begin());
}

std::pair<LabelSet, LabelSet> MaximalCommutingFamily::children(LabelSet member) const {
  return children_[index_of(member)];
}

LabelSet MaximalCommutingFamily::smallest_member_containing(LabelSet set) const {
  std::optional<LabelSet> best;
  for (LabelSet m : members_)
    if (m.includes(set) && (!best || m.size() < best->size())) best = m;
  if (!best) throw domain_error("family: no member contains " + to_string(set));
  return *best;
}

CommutingCheck is_maximal_commuting(const std::vector<LabelSet>& sets, LabelSet labels) {
  bool commuting = true;
  for (std::size_t i = 0; i < sets.size() && commuting; ++i) {
    if (sets[i].size() < 2 || !labels.includes(sets[i])) commuting = false;
    for (std::size_t j = i + 1; j < sets.size() && commuting; ++j)
      if (sets[i] == sets[j] || !commutes(sets[i], sets[j])) commuting = false;
  }
  // A commuting family of a set with k elements has at most k-1 members, and
  // every maximal one attains that bound.
  const bool maximal = commuting && labels.size() >= 1 && sets.size() + 1 == labels.size();
  return {commuting, maximal};
}

std::string serialize(const MaximalCommutingFamily& family, bool shortened) {
  std::string out;
  for (std::size_t i = shortened ? 1 : 0; i < family.members().size(); ++i) {
    if (!out.empty()) out += ";";
    out += to_string(family.members()[i]);
  }
  return out;
}

MaximalCommutingFamily parse_family(std::string_view text, std::optional<unsigned> n) {
  auto members = parse_member_list(text);
  LabelSet labels;
  if (n) {
    labels = LabelSet::range(*n);
    if (std::find(members.begin(), members.end(), labels) == members.end()) members.push_back(labels);
  } else {
    for (LabelSet m : members) labels = labels | m;
    if (std::find(members.begin(), members.end(), labels) == members.end())
      throw domain_error("family: full label set missing; pass n to accept the shortened form");
  }
  return MaximalCommutingFamily(labels, std::move(members));
}

namespace {

std::vector<std::vector<LabelSet>> member_lists(LabelSet labels) {
  if (labels.size() == 1) return {{}};
  std::vector<std::vector<LabelSet>> out;
  const LabelSet rest = labels.without(labels.min());
  for (std::uint64_t sub = rest.bits(); sub != 0; sub = (sub - 1) & rest.bits()) {
    const LabelSet right(sub);
    const LabelSet left = labels - right;
    const auto lefts = member_lists(left);
    const auto rights = member_lists(right);
    for (const auto& a : lefts)
      for (const auto& b : rights) {
        std::vector<LabelSet> members{labels};
        members.insert(members.end(), a.begin(), a.end());
        members.insert(members.end(), b.begin(), b.end());
        out.push_back(std::move(members));
      }
  }
  return out;
}

}  // namespace

std::vector<MaximalCommutingFamily> enumerate_families(LabelSet labels) {
  if (labels.size() < 2) throw domain_error("enumerate_families: need at least two labels");
  std::vector<std::pair<std::string, MaximalCommutingFamily>> keyed;
  for (auto& members : member_lists(labels)) {
    MaximalCommutingFamily f(labels, std::move(members));
    keyed.emplace_back(serialize(f), std::move(f));
  }
  std::sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<MaximalCommutingFamily> out;
  out.reserve(keyed.size());
  for (auto& [key, f] : keyed) out.push_back(std::move(f));
  return out;
}

BigInt double_factorial(unsigned k) {
  BigInt out(1);
  for (unsigned i = k; i > 1; i -= 2) out *= i;
  return out;
}

std::vector<TournamentCounts> count_sequences(unsigned n_max) {
  if (n_max < 2) throw domain_error("count_sequences: n_max must be at least 2");
  std::vector<BigInt> t(n_max + 1), w(n_max + 1), u(n_max + 1), k(n_max + 1);
  t[1] = w[1] = u[1] = k[1] = 1;
  std::vector<std::vector<BigInt>> binom(n_max + 1, std::vector<BigInt>(n_max + 1));
  for (unsigned a = 0; a <= n_max; ++a) {
    binom[a][0] = binom[a][a] = 1;
    for (unsigned b = 1; b < a; ++b) binom[a][b] = binom[a - 1][b - 1] + binom[a - 1][b];
  }
  for (unsigned n = 2; n <= n_max; ++n) {
    BigInt ts(0), ws(0), us(0), ks(0);
    for (unsigned j = 1; j < n; ++j) {
      ts += t[j] * t[n - j];
      ws += w[j] * u[n - j];
      us += u[j] * u[n - j];
      ks += binom[n][j] * k[j] * k[n - j];
    }
    if (n % 2 == 0) us += u[n / 2];
    t[n] = ts;
    w[n] = ws;
    u[n] = us / 2;
    k[n] = ks / 2;
    if (k[n] != double_factorial(2 * n - 3))
      throw theorem_violation("count_sequences: K_" + std::to_string(n) + " differs from (2n-3)!!");
  }
  std::vector<TournamentCounts> out;
  for (unsigned n = 2; n <= n_max; ++n) out.push_back({n, t[n], w[n], u[n], k[n]});
  return out;
}

LoserMap::LoserMap(MaximalCommutingFamily family, const std::map<LabelSet, LabelSet, LabelSetKeyLess>& losers)
    : family_(std::move(family)) {
  for (LabelSet m : family_.members()) {
    auto it = losers.find(m);
    if (it == losers.end()) throw domain_error("loser map: no loser given for " + to_string(m));
    const auto [a, b] = family_.children(m);
    if (it->second != a && it->second != b)
      throw domain_error("loser map: " + to_string(it->second) + " is not a side of " + to_string(m));
    losers_.push_back(it->second);
  }
  if (losers.size() != family_.size()) throw domain_error("loser map: entries for non-members");
}

LoserMap LoserMap::canonical(const MaximalCommutingFamily& family, unsigned winner) {
  if (!family.labels().contains(winner))
    throw domain_error("loser map: winner " + std::to_string(winner) + " is not a label");
  std::map<LabelSet, LabelSet, LabelSetKeyLess> losers;
  for (LabelSet m : family.members()) {
    const auto [a, b] = family.children(m);  // a has the smaller minimum
    if (m.contains(winner))
      losers[m] = a.contains(winner) ? b : a;
    else
      losers[m] = a;
  }
  return LoserMap(family, losers);
}

LabelSet LoserMap::loser(LabelSet member) const { return losers_[family_.index_of(member)]; }

LabelSet LoserMap::winner_side(LabelSet member) const { return member - loser(member); }

LabelSet players(const LoserMap& losers, LabelSet member) {
  LabelSet out = member;
  for (LabelSet j : losers.family().members())
    if (member.strictly_includes(j)) out = out - losers.loser(j);
  if (out.size() != 2) throw theorem_violation("players: game " + to_string(member) + " does not have two players");
  return out;
}

std::pair<unsigned, unsigned> player_pair(const LoserMap& losers, LabelSet member) {
  const LabelSet p = players(losers, member);
  const LabelSet lost = p & losers.loser(member);
  return {lost.min(), (p - lost).min()};
}

std::size_t OrderedFamily::position(LabelSet member) const {
  auto it = std::find(order_.begin(), order_.end(), member);
  if (it == order_.end()) throw domain_error("ordered family: " + to_string(member) + " is not a member");
  return static_cast<std::size_t>(it - order_.begin());
}

OrderedFamily canonical_order(const MaximalCommutingFamily& family) {
  if (!family.labels().contains(0)) throw domain_error("canonical_order: label 0 is required; relabel first");
  OrderedFamily out(family);
  for (LabelSet m : family.members())
    if (m.contains(0)) out.chain_.push_back(m);
  std::sort(out.chain_.begin(), out.chain_.end(), [](LabelSet a, LabelSet b) { return a.size() < b.size(); });

  LabelSet previous = LabelSet::singleton(0);
  for (LabelSet link : out.chain_) {
    const LabelSet region = link - previous;
    std::vector<LabelSet> pending;
    for (LabelSet m : family.members())
      if (region.includes(m)) pending.push_back(m);
    std::vector<LabelSet> group;
    while (!pending.empty()) {
      std::optional<std::size_t> pick;
      for (std::size_t i = 0; i < pending.size(); ++i) {
        bool available = true;
        for (LabelSet other : pending)
          if (other.strictly_includes(pending[i])) available = false;
        if (available && (!pick || pending[i].min() < pending[*pick].min())) pick = i;
      }
      group.push_back(pending[*pick]);
      pending.erase(pending.begin() + static_cast<std::ptrdiff_t>(*pick));
    }
    out.order_.push_back(link);
    out.order_.insert(out.order_.end(), group.begin(), group.end());
    out.groups_.push_back(std::move(group));
    previous = link;
  }
  if (out.order_.size() != family.size()) throw theorem_violation("canonical_order: order misses members");
  return out;
}

std::string to_string(const Segment& segment) {
  return (segment.kind == Segment::Kind::leaf ? "leaf:" : "game:") + to_string(segment.target);
}

std::vector<Segment> segments(const MaximalCommutingFamily& family) {
  std::vector<Segment> out;
  for (unsigned l : family.labels().elements()) out.push_back(Segment::leaf(l));
  for (LabelSet m : family.members()) out.push_back(Segment::game(m));
  return out;
}

Deletion delete_team(const MaximalCommutingFamily& family, unsigned team) {
  if (!family.labels().contains(team)) throw domain_error("delete_team: " + std::to_string(team) + " is not a label");
  if (family.labels().size() < 3) throw domain_error("delete_team: need at least three teams");
  const LabelSet first = family.smallest_member_containing(LabelSet::singleton(team));
  const LabelSet rest = first.without(team);
  std::vector<LabelSet> members;
  for (LabelSet m : family.members()) {
    if (m == first) continue;
    members.push_back(m.contains(team) ? m.without(team) : m);
  }
  const Segment seg = rest.size() == 1 ? Segment::leaf(rest.min()) : Segment::game(rest);
  return {MaximalCommutingFamily(family.labels().without(team), std::move(members)), seg};
}

Insertion insert_team(const MaximalCommutingFamily& family, unsigned team, const Segment& segment) {
  if (team >= max_labels) throw domain_error("insert_team: label out of range");
  if (family.labels().contains(team)) throw domain_error("insert_team: " + std::to_string(team) + " is already a label");
  const LabelSet s = segment.target;
  if (segment.kind == Segment::Kind::leaf) {
    if (s.size() != 1 || !family.labels().includes(s)) throw domain_error("insert_team: invalid leaf segment " + to_string(segment));
  } else if (!family.contains(s)) {
    throw domain_error("insert_team: invalid game segment " + to_string(segment));
  }
  std::vector<LabelSet> members{s.with(team)};
  for (LabelSet m : family.members()) members.push_back(m.strictly_includes(s) ? m.with(team) : m);
  const bool top = segment.kind == Segment::Kind::game && s == family.labels();
  return {MaximalCommutingFamily(family.labels().with(team), std::move(members)),
          segment.kind == Segment::Kind::leaf, top};
}

LabelSet md_set(unsigned i, LabelSet j, LabelSet set) {
  if (j.empty() || set.empty()) throw domain_error("md: sets must be nonempty");
  return set.includes(j) ? set.with(i) : set.without(i);
}

int me_set(unsigned i, LabelSet j, LabelSet set) {
  if (j.empty() || set.empty()) throw domain_error("me: sets must be nonempty");
  return set.contains(i) && set.includes(j) ? 1 : 0;
}

MaximalCommutingFamily mc_family_transform(const MaximalCommutingFamily& family, const TransformTarget& target) {
  const LabelSet labels = family.labels();
  if (!labels.contains(0)) throw domain_error("mc_family_transform: label 0 is required");
  LabelSet k;
  if (const auto* member = std::get_if<LabelSet>(&target)) {
    if (!family.contains(*member)) throw domain_error("mc_family_transform: " + to_string(*member) + " is not a member");
    k = *member;
  } else {
    const Label l = std::get<Label>(target);
    if (l.is_infinity()) {
      k = labels;
    } else {
      if (l.index() == 0 || !labels.contains(l.index()))
        throw domain_error("mc_family_transform: invalid team " + to_string(l));
      k = LabelSet::singleton(l.index());
    }
  }
  std::vector<LabelSet> members;
  auto add = [&](LabelSet m) {
    if (m.size() >= 2 && std::find(members.begin(), members.end(), m) == members.end()) members.push_back(m);
  };
  for (LabelSet m : family.members()) add(md_set(0, k, m));
  add(md_set(0, k, k));
  add(k.without(0));
  return MaximalCommutingFamily(labels, std::move(members));
}

std::pair<MaximalCommutingFamily, Relabeling> normalize_labels(const MaximalCommutingFamily& family) {
  Relabeling r;
  r.to_dense.assign(family.labels().max() + 1, max_labels);
  for (unsigned l : family.labels().elements()) {
    r.to_dense[l] = static_cast<unsigned>(r.from_dense.size());
    r.from_dense.push_back(l);
  }
  std::vector<LabelSet> members;
  for (LabelSet m : family.members()) {
    LabelSet mapped;
    for (unsigned l : m.elements()) mapped = mapped.with(r.to_dense[l]);
    members.push_back(mapped);
  }
  return {MaximalCommutingFamily(LabelSet::range(static_cast<unsigned>(r.from_dense.size())), std::move(members)), r};
}

std::vector<LabelSet> PairedFamily::hat_sets() const {
  std::vector<LabelSet> out;
  const auto fixed_labels = fixed.elements();
  LabelSet acc;
  for (std::size_t k = 0; k < fixed_labels.size(); ++k) {
    acc = acc | parts[k] | LabelSet::singleton(fixed_labels[k]);
    if (k >= 1) out.push_back(acc);
  }
  return out;
}

std::vector<PairedFamily> enumerate_paired_families(LabelSet moving, LabelSet fixed) {
  if (moving.empty() || fixed.empty()) throw domain_error("paired families: label sets must be nonempty");
  if (!moving.disjoint(fixed)) throw domain_error("paired families: label sets must be disjoint");
  const auto movers = moving.elements();
  const auto anchors = fixed.elements();
  const std::size_t m = anchors.size();
  std::vector<PairedFamily> out;
  std::vector<std::size_t> assign(movers.size(), 0);
  for (;;) {
    std::vector<LabelSet> parts(m);
    for (std::size_t i = 0; i < movers.size(); ++i) parts[assign[i]] = parts[assign[i]].with(movers[i]);
    std::vector<std::vector<std::vector<LabelSet>>> choices(m);
    for (std::size_t k = 0; k < m; ++k) {
      const LabelSet local = parts[k].with(anchors[k]);
      if (local.size() == 1) {
        choices[k] = {{}};
      } else {
        for (const auto& f : enumerate_families(local)) choices[k].push_back(f.members());
      }
    }
    std::vector<std::size_t> pick(m, 0);
    for (;;) {
      PairedFamily p{moving, fixed, parts, {}};
      for (std::size_t k = 0; k < m; ++k) p.subfamilies.push_back(choices[k][pick[k]]);
      out.push_back(std::move(p));
      std::size_t k = 0;
      while (k < m && ++pick[k] == choices[k].size()) pick[k++] = 0;
      if (k == m) break;
    }
    std::size_t i = 0;
    while (i < assign.size() && ++assign[i] == m) assign[i++] = 0;
    if (i == assign.size()) break;
  }
  return out;
}

std::vector<LabelSet> hat_family(const PairedFamily& family) {
  std::vector<LabelSet> out;
  for (const auto& sub : family.subfamilies) out.insert(out.end(), sub.begin(), sub.end());
  for (LabelSet h : family.hat_sets()) out.push_back(h);
  std::sort(out.begin(), out.end(), canonical_less);
  return out;
}

}  // namespace kzmc
