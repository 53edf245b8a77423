#include "uts/text.hpp"

#include <cctype>

namespace uts {

namespace {

bool is_word_char(unsigned char c) { return std::isalnum(c) != 0 || c >= 0x80; }

bool is_sentence_end(char c) { return c == '.' || c == '!' || c == '?'; }

}  // namespace

std::vector<std::string> tokenize(const std::string& text) {
  std::vector<std::string> toks;
  std::string cur;
  for (unsigned char c : text) {
    if (std::isspace(c)) {
      if (!cur.empty()) toks.push_back(cur), cur.clear();
    } else if (is_word_char(c)) {
      cur.push_back(static_cast<char>(std::tolower(c)));
    } else {
      if (!cur.empty()) toks.push_back(cur), cur.clear();
      toks.emplace_back(1, static_cast<char>(c));
    }
  }
  if (!cur.empty()) toks.push_back(cur);
  return toks;
}

std::vector<std::string> split_sentences(const std::string& text) {
  std::vector<std::string> out;
  std::string cur;
  for (size_t i = 0; i < text.size(); ++i) {
    cur.push_back(text[i]);
    if (is_sentence_end(text[i])) {
      // swallow trailing quote/space run before deciding the boundary
      size_t j = i + 1;
      while (j < text.size() && (text[j] == '"' || text[j] == '\'')) cur.push_back(text[j]), ++j, ++i;
      out.push_back(cur);
      cur.clear();
    }
  }
  // trim pure-whitespace fragments
  auto nonspace = [](const std::string& s) {
    for (unsigned char c : s)
      if (!std::isspace(c)) return true;
    return false;
  };
  if (nonspace(cur)) out.push_back(cur);
  std::vector<std::string> kept;
  for (auto& s : out)
    if (nonspace(s)) kept.push_back(s);
  return kept;
}

std::vector<std::vector<std::string>> split_token_sentences(
    const std::vector<std::string>& toks) {
  std::vector<std::vector<std::string>> out;
  std::vector<std::string> cur;
  for (const auto& t : toks) {
    cur.push_back(t);
    if (t.size() == 1 && is_sentence_end(t[0])) {
      out.push_back(cur);
      cur.clear();
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

std::string join_tokens(const std::vector<std::string>& toks) {
  std::string s;
  for (size_t i = 0; i < toks.size(); ++i) {
    if (i) s.push_back(' ');
    s += toks[i];
  }
  return s;
}

}  // namespace uts
