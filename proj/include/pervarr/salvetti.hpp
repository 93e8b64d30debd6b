#pragma once
#include <string>
#include <vector>

#include "pervarr/module_core.hpp"

namespace pervarr {

/// One half-monodromy generator: a morphism from the source chamber to the
/// target chamber. The pair must oppose. A negative letter is the formal
/// inverse of the positive letter running the other way.
struct Letter {
  std::size_t src, tgt;
  bool positive = true;
  bool operator==(const Letter&) const = default;
};

/// Letters in application order: front() acts first.
using Word = std::vector<Letter>;

Word inverse_word(const Word& w);

/// Zifferblatt relation: the two half-cycles around a codimension-2 face,
/// from a start chamber to its antipode in the cycle. Both words consist of
/// positive letters and have length m where the cycle has length 2m.
struct ZifferblattRelation {
  std::size_t codim2_face;
  std::size_t start_chamber;
  Word lhs, rhs;
};

struct Presentation {
  std::size_t base;
  std::vector<std::pair<std::size_t, std::size_t>> generators;
  std::vector<ZifferblattRelation> relations;
  std::vector<Word> pi1_generators;  // loop words at the base chamber
};

/// Salvetti presentation of the fundamental groupoid of the complexified
/// complement, with loop generators for the fundamental group at base
/// extracted through a spanning tree of the chamber adjacency graph.
Presentation salvetti_presentation(const FacePoset& poset, std::size_t base);

/// Matrix of one letter on the module: positive (A -> B) gives e_B e_A,
/// negative gives e_B s_{BA}. The result represents a map e_A M -> e_B M
/// written in ambient coordinates.
Matrix letter_matrix(const RModule& m, const Letter& l);

/// Product of the letter matrices (later letters multiply on the left).
/// The empty word evaluates to the identity.
Matrix evaluate_word(const RModule& m, const Word& w);

struct ZifferblattReport {
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
};

/// Evaluates both sides of every relation and compares them as matrices.
ZifferblattReport check_zifferblatt(const RModule& m, const Presentation& pres);
ZifferblattReport check_zifferblatt(const RModule& m);

std::string word_to_text(const FacePoset& poset, const Word& w);
std::string presentation_to_text(const FacePoset& poset, const Presentation& p);

}  // namespace pervarr
