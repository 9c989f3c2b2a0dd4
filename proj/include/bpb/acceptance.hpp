#pragma once

#include <string>
#include <vector>

#include "bpb/learning.hpp"

namespace bpb {

// One experiment of the acceptance suite (A1..A8). `csv_rows` carry the
// per-instance measurements behind the verdict, plot-ready.
struct CriterionResult {
  std::string id;
  std::string title;
  bool pass = false;
  std::string detail;
  std::string csv_header;
  std::vector<std::string> csv_rows;
  double seconds = 0;
};

struct SuiteOptions {
  bool quick = false;               // reduced seeds/rounds, marked "smoke"
  bool corrupt_constructor = false; // fault-injection hook: breaks A2 on purpose
  std::string out_dir;              // when set, one CSV per criterion + summary.json
};

struct SuiteResult {
  std::vector<CriterionResult> criteria;
  bool pass = true;
};

CriterionResult run_a1();
CriterionResult run_a2(const SuiteOptions& opts);
CriterionResult run_a3(const SuiteOptions& opts);
CriterionResult run_a4(const SuiteOptions& opts);
CriterionResult run_a5(const SuiteOptions& opts);
CriterionResult run_a6(const SuiteOptions& opts);
CriterionResult run_a7(const SuiteOptions& opts);
CriterionResult run_a8(const SuiteOptions& opts);

// Runs every criterion; writes per-criterion CSVs and a summary JSON when
// opts.out_dir is set (the directory must exist).
SuiteResult run_paper_suite(const SuiteOptions& opts);

std::string suite_summary_json(const SuiteResult& res, const SuiteOptions& opts);

}  // namespace bpb
