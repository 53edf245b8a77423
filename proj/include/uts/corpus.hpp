#pragma once

#include <functional>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "uts/errors.hpp"

namespace uts {

struct Vocab {
  static constexpr int kPad = 0;
  static constexpr int kUnk = 1;
  static constexpr int kBos = 2;
  static constexpr int kEos = 3;
  static constexpr int kReserved = 4;

  std::vector<std::string> id2tok{"<pad>", "<unk>", "<bos>", "<eos>"};
  std::unordered_map<std::string, int> tok2id;

  int id(const std::string& tok) const {
    auto it = tok2id.find(tok);
    return it == tok2id.end() ? kUnk : it->second;
  }
  bool contains(const std::string& tok) const { return tok2id.count(tok) > 0; }
  const std::string& token(int i) const { return id2tok.at(static_cast<size_t>(i)); }
  int size() const { return static_cast<int>(id2tok.size()); }

  void add(const std::string& tok);
  void save(const std::string& path) const;
  static Vocab load(const std::string& path);
};

struct TokenizedSentence {
  std::vector<std::string> toks;
  std::vector<int> ids;  // resolved against a Vocab; kUnk for OOV
};

struct Event {
  std::string time;
  std::vector<TokenizedSentence> sentences;

  long token_count() const {
    long n = 0;
    for (const auto& s : sentences) n += static_cast<long>(s.toks.size());
    return n;
  }
};

struct TimelineExample {
  std::string id;
  std::vector<Event> events;
  std::vector<TokenizedSentence> summary;
  std::optional<std::vector<int>> oracle;  // ascending doc-sentence indices

  long num_events() const { return static_cast<long>(events.size()); }
  long num_doc_sentences() const {
    long n = 0;
    for (const auto& e : events) n += static_cast<long>(e.sentences.size());
    return n;
  }
  std::vector<long> sentence_counts() const {
    std::vector<long> c;
    for (const auto& e : events) c.push_back(static_cast<long>(e.sentences.size()));
    return c;
  }
  const TokenizedSentence& doc_sentence(long i) const;
  std::vector<std::vector<std::string>> doc_sentence_tokens() const;
  std::vector<std::string> summary_tokens() const;
  std::vector<std::string> source_tokens() const;  // all event tokens, in order
};

struct TruncationPolicy {
  long max_article_tokens = 400;
  long max_summary_tokens = 70;
  long max_events = 8;
  long max_sentences = 24;
  long max_sentence_tokens = 20;
  long max_selected = 4;

  void validate() const;
};

// Tokenizes and truncates one raw record in place. The article budget is
// split as floor(budget/T_e) per kept event, remainder to earlier events.
void truncate_example(TimelineExample& ex, const TruncationPolicy& policy);

// Re-resolves every token id against the vocab.
void assign_ids(TimelineExample& ex, const Vocab& vocab);

struct LoadOptions {
  TruncationPolicy policy;
  const Vocab* vocab = nullptr;  // optional; ids stay empty without it
  bool strict = true;            // false: skip malformed records
};

std::vector<TimelineExample> load_corpus(const std::string& path, const LoadOptions& opt);
void write_corpus(const std::vector<TimelineExample>& examples, const std::string& path);

// Streams raw token sequences (events then summary) per record, without
// truncation; used for vocabulary building.
void for_each_record_tokens(const std::string& path,
                            const std::function<void(const std::vector<std::string>&)>& fn);

// Most-frequent `cap` tokens, ties broken by first occurrence.
Vocab build_vocab(const std::string& corpus_path, long cap);

}  // namespace uts
