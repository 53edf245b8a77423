#include "uts/rouge.hpp"

#include <algorithm>
#include <map>
#include <regex>

namespace uts {

namespace {

double f1_of(double p, double r) { return p + r > 0.0 ? 2.0 * p * r / (p + r) : 0.0; }

std::map<std::vector<std::string>, long> ngram_counts(
    const std::vector<std::string>& toks, int n) {
  std::map<std::vector<std::string>, long> counts;
  if (static_cast<int>(toks.size()) < n) return counts;
  for (size_t i = 0; i + static_cast<size_t>(n) <= toks.size(); ++i) {
    std::vector<std::string> gram(toks.begin() + static_cast<long>(i),
                                  toks.begin() + static_cast<long>(i) + n);
    ++counts[std::move(gram)];
  }
  return counts;
}

}  // namespace

RougeComponent rouge_n(const std::vector<std::string>& candidate,
                       const std::vector<std::string>& reference, int n) {
  RougeComponent out;
  auto cc = ngram_counts(candidate, n);
  auto rc = ngram_counts(reference, n);
  long total_c = 0, total_r = 0, overlap = 0;
  for (const auto& [g, k] : cc) total_c += k;
  for (const auto& [g, k] : rc) total_r += k;
  for (const auto& [g, k] : cc) {
    auto it = rc.find(g);
    if (it != rc.end()) overlap += std::min(k, it->second);
  }
  if (total_c > 0) out.precision = double(overlap) / double(total_c);
  if (total_r > 0) out.recall = double(overlap) / double(total_r);
  out.f1 = f1_of(out.precision, out.recall);
  return out;
}

RougeComponent rouge_l(const std::vector<std::string>& candidate,
                       const std::vector<std::string>& reference) {
  RougeComponent out;
  size_t nc = candidate.size(), nr = reference.size();
  if (nc == 0 || nr == 0) return out;
  std::vector<long> prev(nr + 1, 0), cur(nr + 1, 0);
  for (size_t i = 1; i <= nc; ++i) {
    for (size_t j = 1; j <= nr; ++j) {
      if (candidate[i - 1] == reference[j - 1])
        cur[j] = prev[j - 1] + 1;
      else
        cur[j] = std::max(prev[j], cur[j - 1]);
    }
    std::swap(prev, cur);
  }
  double lcs = double(prev[nr]);
  out.precision = lcs / double(nc);
  out.recall = lcs / double(nr);
  out.f1 = f1_of(out.precision, out.recall);
  return out;
}

std::set<std::string> extract_dates(const std::string& text) {
  static const std::regex pat(
      R"((\d{4}-\d{2}-\d{2}|\d{4}-\d{2}|\d{4}))");
  std::set<std::string> dates;
  auto begin = std::sregex_iterator(text.begin(), text.end(), pat);
  for (auto it = begin; it != std::sregex_iterator(); ++it) {
    // reject matches embedded in longer digit runs
    size_t pos = static_cast<size_t>(it->position());
    size_t end = pos + static_cast<size_t>(it->length());
    bool left_digit = pos > 0 && std::isdigit(static_cast<unsigned char>(text[pos - 1]));
    bool right_digit = end < text.size() && std::isdigit(static_cast<unsigned char>(text[end]));
    if (!left_digit && !right_digit) dates.insert(it->str());
  }
  return dates;
}

DateScore date_f1(const std::string& candidate_text, const std::string& reference_text) {
  DateScore out;
  auto cd = extract_dates(candidate_text);
  auto rd = extract_dates(reference_text);
  if (cd.empty() && rd.empty()) {
    out.both_empty = true;
    out.precision = out.recall = out.f1 = 1.0;
    return out;
  }
  long overlap = 0;
  for (const auto& d : cd) overlap += rd.count(d) ? 1 : 0;
  if (!cd.empty()) out.precision = double(overlap) / double(cd.size());
  if (!rd.empty()) out.recall = double(overlap) / double(rd.size());
  out.f1 = f1_of(out.precision, out.recall);
  return out;
}

}  // namespace uts
