#pragma once

#include <optional>
#include <string>
#include <vector>

#include "multicomm/model.hpp"

namespace multicomm {

/// One bundled inequality with the reference values shipped alongside it.
/// Reference strings are empty when no value is bundled.
struct CorpusEntry {
  std::string name;        // e.g. "322-1"
  std::string alias;       // e.g. "I1" (may be empty)
  Functional functional;   // scenario carries default D1=D2=2/3 for dist rows
  std::string ref_classical;
  std::string ref_seesaw_d2;
  std::string ref_hierarchy_d2;
};

/// The full bundled corpus, in a stable order.
const std::vector<CorpusEntry>& corpus();

/// Lookup by name or alias (case-sensitive). Empty optional when unknown.
std::optional<CorpusEntry> find_inequality(const std::string& name);

}  // namespace multicomm
