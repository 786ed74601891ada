#include "multicomm/corpus.hpp"

namespace multicomm {

namespace {

struct RawTerm {
  int x, y, z, c;
};

struct RawEntry {
  const char* name;
  const char* alias;
  int nx, ny, nz;
  bool dist;
  std::vector<RawTerm> terms;
  const char* rhs_const;
  const char* rhs_d1;
  const char* rhs_d2;
  const char* ref_classical;
  const char* ref_seesaw_d2;
  const char* ref_hierarchy_d2;
};

const RawEntry kRawCorpus[] = {
#include "corpus_data.inc"
};

std::vector<CorpusEntry> build_corpus() {
  std::vector<CorpusEntry> out;
  for (const RawEntry& raw : kRawCorpus) {
    CorpusEntry e;
    e.name = raw.name;
    e.alias = raw.alias;
    e.ref_classical = raw.ref_classical;
    e.ref_seesaw_d2 = raw.ref_seesaw_d2;
    e.ref_hierarchy_d2 = raw.ref_hierarchy_d2;
    Scenario s;
    s.nx = raw.nx;
    s.ny = raw.ny;
    s.nz = raw.nz;
    if (raw.dist) {
      s.constraint = ConstraintType::Distinguishability;
      s.D1 = Rat(2, 3);  // the bundled reference values are quoted at 2/3
      s.D2 = Rat(2, 3);
    } else {
      s.constraint = ConstraintType::Dimension;
      s.d = 2;
    }
    e.functional.scenario = s;
    e.functional.name = e.name;
    e.functional.coeffs.assign(s.behavior_size(), Rat(0));
    for (const RawTerm& t : raw.terms)
      e.functional.coeffs[s.index(t.x, t.y, t.z)] += t.c;
    e.functional.rhs.constant = rat_from_string(raw.rhs_const);
    e.functional.rhs.coefD1 = rat_from_string(raw.rhs_d1);
    e.functional.rhs.coefD2 = rat_from_string(raw.rhs_d2);
    e.functional.validate();
    out.push_back(std::move(e));
  }
  return out;
}

}  // namespace

const std::vector<CorpusEntry>& corpus() {
  static const std::vector<CorpusEntry> c = build_corpus();
  return c;
}

std::optional<CorpusEntry> find_inequality(const std::string& name) {
  for (const CorpusEntry& e : corpus())
    if (e.name == name || (!e.alias.empty() && e.alias == name)) return e;
  return std::nullopt;
}

}  // namespace multicomm
