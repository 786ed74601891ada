#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "multicomm/model.hpp"

namespace multicomm {

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Inequality JSON: {"scenario":{"nx","ny","nz"},
///                   "constraint":{"type":"dimension"|"distinguishability",
///                                 "d" | "D1","D2"},
///                   "terms":[{"x","y","z","c"}...],
///                   "rhs":{"const","d1","d2"}}
/// 1-based indices; rational values may be numbers or strings like "2/3".
Functional read_inequality_json(const std::string& path);
void write_inequality_json(std::ostream& os, const Functional& f);

/// Strategy JSON: {"alice_states":[...],"bob_states":[...],"povm":[...]}
/// where a state is a complex vector (outer-producted) or a density matrix,
/// and complex entries are numbers or [re, im] pairs.
QuantumStrategy read_strategy_json(const std::string& path);

/// One row of the fixed-schema result CSV:
/// ineq,d,D1,D2,method,value,classical,paper_value,seed,wall_ms
struct ResultRecord {
  std::string ineq;
  std::string d;       // empty for distinguishability runs
  std::string D1, D2;  // empty for dimension runs
  std::string method;
  std::string value;
  std::string classical;
  std::string paper_value;
  std::string seed;
  std::string wall_ms;
};

void write_csv_header(std::ostream& os);
void write_csv_row(std::ostream& os, const ResultRecord& r);
void write_json_records(std::ostream& os, const std::vector<ResultRecord>& rs);

}  // namespace multicomm
