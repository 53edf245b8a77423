#pragma once

#include <set>
#include <string>
#include <vector>

namespace uts {

struct RougeComponent {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

// Clipped n-gram overlap, n in {1, 2}. Empty reference or candidate gives 0.
RougeComponent rouge_n(const std::vector<std::string>& candidate,
                       const std::vector<std::string>& reference, int n);

// Longest common subsequence, whole-text.
RougeComponent rouge_l(const std::vector<std::string>& candidate,
                       const std::vector<std::string>& reference);

struct DateScore {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  bool both_empty = false;  // scored 1.0 by convention, flagged here
};

// Dates matched as YYYY-MM-DD, YYYY-MM or bare 4-digit years; set semantics.
std::set<std::string> extract_dates(const std::string& text);
DateScore date_f1(const std::string& candidate_text, const std::string& reference_text);

}  // namespace uts
