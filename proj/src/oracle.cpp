#include "uts/oracle.hpp"

#include <algorithm>

#include "uts/errors.hpp"
#include "uts/rouge.hpp"

namespace uts {

double oracle_set_score(const std::vector<std::vector<std::string>>& doc_sentences,
                        const std::vector<int>& selected,
                        const std::vector<std::string>& summary_tokens) {
  std::vector<int> idx = selected;
  std::sort(idx.begin(), idx.end());
  std::vector<std::string> cand;
  for (int i : idx) {
    const auto& s = doc_sentences.at(static_cast<size_t>(i));
    cand.insert(cand.end(), s.begin(), s.end());
  }
  return rouge_n(cand, summary_tokens, 2).f1;
}

std::vector<int> make_oracle_labels(
    const std::vector<std::vector<std::string>>& doc_sentences,
    const std::vector<std::string>& summary_tokens, long max_selected) {
  if (doc_sentences.empty()) throw DataError("oracle labeling needs >= 1 sentence");
  std::vector<int> selected;
  std::vector<bool> used(doc_sentences.size(), false);
  double best = 0.0;
  while (static_cast<long>(selected.size()) < max_selected) {
    int pick = -1;
    double pick_score = best;
    for (size_t i = 0; i < doc_sentences.size(); ++i) {
      if (used[i]) continue;
      std::vector<int> trial = selected;
      trial.push_back(static_cast<int>(i));
      double s = oracle_set_score(doc_sentences, trial, summary_tokens);
      if (s > pick_score + 1e-12) {
        pick_score = s;
        pick = static_cast<int>(i);
      }
    }
    if (pick < 0) break;
    selected.push_back(pick);
    used[static_cast<size_t>(pick)] = true;
    best = pick_score;
  }
  std::sort(selected.begin(), selected.end());
  return selected;
}

}  // namespace uts
