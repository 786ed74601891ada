#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "multicomm/model.hpp"
#include "multicomm/sdp.hpp"

namespace multicomm {

enum class LetterKind { Identity, AliceState, BobState, Measurement, Theta, Phi };
enum class LetterSide { Alice, Bob, Joint };

struct Letter {
  LetterKind kind = LetterKind::Identity;
  int index = 0;  // 1-based input/outcome label; unused for Theta/Phi

  LetterSide side() const {
    switch (kind) {
      case LetterKind::AliceState:
      case LetterKind::Theta:
        return LetterSide::Alice;
      case LetterKind::BobState:
      case LetterKind::Phi:
        return LetterSide::Bob;
      default:
        return LetterSide::Joint;
    }
  }
  friend auto operator<=>(const Letter&, const Letter&) = default;
};

using Word = std::vector<Letter>;

std::string word_to_string(const Word& w);

/// Canonical form of an operator word under: identity deletion, idempotence
/// of states and projectors, annihilation of distinct projectors (returns
/// nullopt, the zero word), commutation of Alice-side and Bob-side letters,
/// and minimization over cyclic rotations and reversal (trace symmetry).
std::optional<Word> canonicalize_word(const Word& w);

enum class HierarchyVariant { Paper, Extended };

/// Moment-matrix skeleton: the monomial list, the partition of entries into
/// identified classes, and the canonical word of each class.
struct MomentStructure {
  std::vector<Word> monomials;
  std::vector<std::vector<int>> entry_class;  // -1 marks the zero class
  std::vector<Word> class_words;              // indexed by class id
  int class_of(const Word& w) const;          // -2 when absent
};

MomentStructure build_moment_structure(const Scenario& s,
                                       HierarchyVariant variant);

struct HierarchyResult {
  double value = 0;
  SdpStatus status = SdpStatus::MaxIter;
  std::vector<double> gamma;  // row-major solved moment matrix
  std::size_t gamma_size = 0;
  std::vector<std::string> labels;  // monomial labels for gamma rows
};

/// Upper bound on the quantum value of f under its scenario's constraint
/// (dimension d or distinguishability caps from the scenario).
HierarchyResult hierarchy_upper_bound(const Functional& f,
                                      HierarchyVariant variant = HierarchyVariant::Paper,
                                      const SdpOptions& opts = {});

/// Labeled text dump of a solved moment matrix.
void dump_gamma(std::ostream& os, const HierarchyResult& r);

}  // namespace multicomm
