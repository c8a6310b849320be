#pragma once

#include <bit>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "kzmc/errors.hpp"
#include "kzmc/rational.hpp"

namespace kzmc {

inline constexpr unsigned max_labels = 64;

// A finite label 0..63 or the point at infinity.
class Label {
 public:
  constexpr explicit Label(unsigned index) : value_(static_cast<int>(index)) {}
  static constexpr Label infinity() { return Label(); }

  constexpr bool is_infinity() const { return value_ < 0; }
  unsigned index() const {
    if (is_infinity()) throw domain_error("label: infinity has no index");
    return static_cast<unsigned>(value_);
  }

  friend constexpr auto operator<=>(const Label&, const Label&) = default;

 private:
  constexpr Label() : value_(-1) {}
  int value_;
};

std::string to_string(Label label);

class LabelSet {
 public:
  constexpr LabelSet() = default;
  constexpr explicit LabelSet(std::uint64_t bits) : bits_(bits) {}
  LabelSet(std::initializer_list<unsigned> labels);

  static LabelSet range(unsigned n);
  static LabelSet singleton(unsigned label);

  constexpr std::uint64_t bits() const { return bits_; }
  constexpr unsigned size() const { return static_cast<unsigned>(std::popcount(bits_)); }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr bool contains(unsigned label) const { return label < max_labels && ((bits_ >> label) & 1U) != 0; }
  constexpr bool includes(LabelSet other) const { return (bits_ & other.bits_) == other.bits_; }
  constexpr bool strictly_includes(LabelSet other) const { return includes(other) && bits_ != other.bits_; }
  constexpr bool disjoint(LabelSet other) const { return (bits_ & other.bits_) == 0; }
  unsigned min() const;
  unsigned max() const;
  std::vector<unsigned> elements() const;

  LabelSet with(unsigned label) const { return *this | singleton(label); }
  LabelSet without(unsigned label) const { return *this - singleton(label); }

  friend constexpr LabelSet operator|(LabelSet a, LabelSet b) { return LabelSet(a.bits_ | b.bits_); }
  friend constexpr LabelSet operator&(LabelSet a, LabelSet b) { return LabelSet(a.bits_ & b.bits_); }
  friend constexpr LabelSet operator-(LabelSet a, LabelSet b) { return LabelSet(a.bits_ & ~b.bits_); }
  friend constexpr bool operator==(LabelSet a, LabelSet b) = default;

 private:
  std::uint64_t bits_ = 0;
};

// Serialization order: larger sets first, then lexicographic on sorted elements.
bool canonical_less(LabelSet a, LabelSet b);

// Orders by bitmask; for use as a map key only.
struct LabelSetKeyLess {
  bool operator()(LabelSet a, LabelSet b) const { return a.bits() < b.bits(); }
};

// Disjoint or strictly nested.
inline bool commutes(LabelSet a, LabelSet b) {
  return a.disjoint(b) || (a.includes(b) && a != b) || (b.includes(a) && a != b);
}

std::string to_string(LabelSet set);
LabelSet parse_label_set(std::string_view text);

// Subset of L~_n = L_n plus infinity.
struct ExtendedLabelSet {
  LabelSet finite;
  bool infinity = false;
};

class MaximalCommutingFamily {
 public:
  // Validates the family; a missing full set L is not added here.
  MaximalCommutingFamily(LabelSet labels, std::vector<LabelSet> members);

  LabelSet labels() const { return labels_; }
  // Members in serialization order (full set first).
  const std::vector<LabelSet>& members() const { return members_; }
  std::size_t size() const { return members_.size(); }
  bool contains(LabelSet member) const;
  std::size_t index_of(LabelSet member) const;

  // The two parts of the unique splitting of a member into members or
  // singletons, ordered by minimum element.
  std::pair<LabelSet, LabelSet> children(LabelSet member) const;

  // Smallest member containing `set` (I_{i,j} for set = {i,j}).
  LabelSet smallest_member_containing(LabelSet set) const;

  friend bool operator==(const MaximalCommutingFamily&, const MaximalCommutingFamily&) = default;

 private:
  LabelSet labels_;
  std::vector<LabelSet> members_;
  std::vector<std::pair<LabelSet, LabelSet>> children_;
};

struct CommutingCheck {
  bool commuting;
  bool maximal;
};

CommutingCheck is_maximal_commuting(const std::vector<LabelSet>& sets, LabelSet labels);

// "{0,1,2,3};{0,1};{2,3}"; shortened omits the full set.
std::string serialize(const MaximalCommutingFamily& family, bool shortened = false);
std::vector<LabelSet> parse_member_list(std::string_view text);
// Without n the label set is the union of the members and the full set must
// be present; with n a shortened list is completed by L_n.
MaximalCommutingFamily parse_family(std::string_view text, std::optional<unsigned> n = std::nullopt);

// Every maximal commuting family on `labels`, sorted by serialization.
std::vector<MaximalCommutingFamily> enumerate_families(LabelSet labels);

struct TournamentCounts {
  unsigned n;
  BigInt patterns;     // T_n
  BigInt win_types;    // W_n
  BigInt types;        // U_n
  BigInt tournaments;  // K_n
};

std::vector<TournamentCounts> count_sequences(unsigned n_max);
BigInt double_factorial(unsigned k);

class LoserMap {
 public:
  // `losers` gives b(I) for every member I.
  LoserMap(MaximalCommutingFamily family, const std::map<LabelSet, LabelSet, LabelSetKeyLess>& losers);

  // b^winner: the side without the winner loses; elsewhere the side with the
  // smaller minimum loses.
  static LoserMap canonical(const MaximalCommutingFamily& family, unsigned winner);

  const MaximalCommutingFamily& family() const { return family_; }
  LabelSet loser(LabelSet member) const;
  LabelSet winner_side(LabelSet member) const;

  friend bool operator==(const LoserMap&, const LoserMap&) = default;

 private:
  MaximalCommutingFamily family_;
  std::vector<LabelSet> losers_;
};

// I_b: the two labels that play the game I.
LabelSet players(const LoserMap& losers, LabelSet member);
// n_I in b(I) and n'_I in b'(I).
std::pair<unsigned, unsigned> player_pair(const LoserMap& losers, LabelSet member);

class OrderedFamily {
 public:
  const MaximalCommutingFamily& family() const { return family_; }
  // I^(1), ..., I^(n-1).
  const std::vector<LabelSet>& order() const { return order_; }
  // I_{1,0} c ... c I_{m,0} = L.
  const std::vector<LabelSet>& chain() const { return chain_; }
  // groups()[k-1] lists the members of I_k in order.
  const std::vector<std::vector<LabelSet>>& groups() const { return groups_; }
  std::size_t position(LabelSet member) const;

 private:
  friend OrderedFamily canonical_order(const MaximalCommutingFamily&);
  explicit OrderedFamily(MaximalCommutingFamily family) : family_(std::move(family)) {}

  MaximalCommutingFamily family_;
  std::vector<LabelSet> order_;
  std::vector<LabelSet> chain_;
  std::vector<std::vector<LabelSet>> groups_;
};

OrderedFamily canonical_order(const MaximalCommutingFamily& family);

// A vertical line segment of the bracket: a team's leaf or a game's output.
struct Segment {
  enum class Kind { leaf, game };
  Kind kind;
  LabelSet target;  // singleton for leaves

  static Segment leaf(unsigned label) { return {Kind::leaf, LabelSet::singleton(label)}; }
  static Segment game(LabelSet member) { return {Kind::game, member}; }
  friend bool operator==(const Segment&, const Segment&) = default;
};

std::string to_string(const Segment& segment);
std::vector<Segment> segments(const MaximalCommutingFamily& family);

struct Deletion {
  MaximalCommutingFamily family;
  Segment segment;
};

struct Insertion {
  MaximalCommutingFamily family;
  bool basic;
  bool top;
};

Deletion delete_team(const MaximalCommutingFamily& family, unsigned team);
Insertion insert_team(const MaximalCommutingFamily& family, unsigned team, const Segment& segment);

LabelSet md_set(unsigned i, LabelSet j, LabelSet set);
int me_set(unsigned i, LabelSet j, LabelSet set);

// A member J of the family, a team j != 0, or infinity.
using TransformTarget = std::variant<LabelSet, Label>;

// The family after deleting team 0 and reinserting it at the target.
MaximalCommutingFamily mc_family_transform(const MaximalCommutingFamily& family, const TransformTarget& target);

struct Relabeling {
  std::vector<unsigned> to_dense;   // indexed by original label; unused entries are max_labels
  std::vector<unsigned> from_dense;
};

// Maps labels to 0..|L|-1 preserving order.
std::pair<MaximalCommutingFamily, Relabeling> normalize_labels(const MaximalCommutingFamily& family);

struct PairedFamily {
  LabelSet moving;
  LabelSet fixed;
  // Indexed by the fixed labels in ascending order.
  std::vector<LabelSet> parts;
  std::vector<std::vector<LabelSet>> subfamilies;  // members on parts[k] plus the k-th fixed label

  std::vector<LabelSet> hat_sets() const;  // S^_2, ..., S^_m
};

std::vector<PairedFamily> enumerate_paired_families(LabelSet moving, LabelSet fixed);
std::vector<LabelSet> hat_family(const PairedFamily& family);

}  // namespace kzmc
