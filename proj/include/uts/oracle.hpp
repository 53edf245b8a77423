#pragma once

#include <string>
#include <vector>

namespace uts {

// Greedy forward selection maximizing ROUGE-2 F1 of the selected set
// (concatenated in index order) against the summary. Stops when nothing
// improves the score or max_selected is reached; ties go to the lowest
// index. Result ascending; may be empty.
std::vector<int> make_oracle_labels(
    const std::vector<std::vector<std::string>>& doc_sentences,
    const std::vector<std::string>& summary_tokens, long max_selected);

double oracle_set_score(const std::vector<std::vector<std::string>>& doc_sentences,
                        const std::vector<int>& selected,
                        const std::vector<std::string>& summary_tokens);

}  // namespace uts
