#include "uts/corpus.hpp"

#include <algorithm>
#include <fstream>

#include "json.hpp"
#include "uts/text.hpp"

namespace uts {

using nlohmann::ordered_json;

void Vocab::add(const std::string& tok) {
  if (tok2id.count(tok)) return;
  tok2id.emplace(tok, size());
  id2tok.push_back(tok);
}

void Vocab::save(const std::string& path) const {
  std::ofstream os(path, std::ios::trunc);
  if (!os) throw DataError("cannot write vocab: " + path);
  for (int i = kReserved; i < size(); ++i) os << id2tok[static_cast<size_t>(i)] << '\n';
}

Vocab Vocab::load(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw DataError("cannot open vocab: " + path);
  Vocab v;
  std::string line;
  while (std::getline(is, line)) {
    if (!line.empty()) v.add(line);
  }
  return v;
}

const TokenizedSentence& TimelineExample::doc_sentence(long i) const {
  long k = i;
  for (const auto& e : events) {
    if (k < static_cast<long>(e.sentences.size())) return e.sentences[static_cast<size_t>(k)];
    k -= static_cast<long>(e.sentences.size());
  }
  throw ShapeError("doc_sentence: index out of range");
}

std::vector<std::vector<std::string>> TimelineExample::doc_sentence_tokens() const {
  std::vector<std::vector<std::string>> out;
  for (const auto& e : events)
    for (const auto& s : e.sentences) out.push_back(s.toks);
  return out;
}

std::vector<std::string> TimelineExample::summary_tokens() const {
  std::vector<std::string> out;
  for (const auto& s : summary) out.insert(out.end(), s.toks.begin(), s.toks.end());
  return out;
}

std::vector<std::string> TimelineExample::source_tokens() const {
  std::vector<std::string> out;
  for (const auto& e : events)
    for (const auto& s : e.sentences) out.insert(out.end(), s.toks.begin(), s.toks.end());
  return out;
}

void TruncationPolicy::validate() const {
  if (max_article_tokens <= 0 || max_summary_tokens <= 0 || max_events <= 0 ||
      max_sentences <= 0 || max_sentence_tokens <= 0 || max_selected <= 0)
    throw UsageError("truncation policy fields must be positive");
}

namespace {

void clip_sentence(TokenizedSentence& s, long cap) {
  if (static_cast<long>(s.toks.size()) > cap) s.toks.resize(static_cast<size_t>(cap));
}

// Clips the event to `budget` tokens, truncating the sentence that crosses
// the line and dropping the rest.
void clip_event_tokens(Event& ev, long budget) {
  long used = 0;
  size_t keep = 0;
  for (auto& s : ev.sentences) {
    if (used >= budget) break;
    long room = budget - used;
    if (static_cast<long>(s.toks.size()) > room) s.toks.resize(static_cast<size_t>(room));
    used += static_cast<long>(s.toks.size());
    ++keep;
  }
  ev.sentences.resize(keep);
  // drop sentences emptied by the cut
  ev.sentences.erase(
      std::remove_if(ev.sentences.begin(), ev.sentences.end(),
                     [](const TokenizedSentence& s) { return s.toks.empty(); }),
      ev.sentences.end());
}

}  // namespace

void truncate_example(TimelineExample& ex, const TruncationPolicy& policy) {
  policy.validate();
  if (ex.events.size() > static_cast<size_t>(policy.max_events))
    ex.events.resize(static_cast<size_t>(policy.max_events));

  for (auto& ev : ex.events)
    for (auto& s : ev.sentences) clip_sentence(s, policy.max_sentence_tokens);

  // global sentence cap, dropped from the tail
  long total = 0;
  for (auto& ev : ex.events) {
    long room = policy.max_sentences - total;
    if (room <= 0) {
      ev.sentences.clear();
      continue;
    }
    if (static_cast<long>(ev.sentences.size()) > room)
      ev.sentences.resize(static_cast<size_t>(room));
    total += static_cast<long>(ev.sentences.size());
  }

  // article token budget split across events
  long t_e = static_cast<long>(ex.events.size());
  if (t_e > 0) {
    long base = policy.max_article_tokens / t_e;
    long rem = policy.max_article_tokens % t_e;
    for (long i = 0; i < t_e; ++i) {
      long allot = base + (i < rem ? 1 : 0);
      clip_event_tokens(ex.events[static_cast<size_t>(i)], allot);
    }
  }

  ex.events.erase(std::remove_if(ex.events.begin(), ex.events.end(),
                                 [](const Event& e) { return e.token_count() == 0; }),
                  ex.events.end());

  // summary token budget
  long used = 0;
  size_t keep = 0;
  for (auto& s : ex.summary) {
    if (used >= policy.max_summary_tokens) break;
    long room = policy.max_summary_tokens - used;
    if (static_cast<long>(s.toks.size()) > room) s.toks.resize(static_cast<size_t>(room));
    used += static_cast<long>(s.toks.size());
    ++keep;
  }
  ex.summary.resize(keep);
  ex.summary.erase(std::remove_if(ex.summary.begin(), ex.summary.end(),
                                  [](const TokenizedSentence& s) { return s.toks.empty(); }),
                   ex.summary.end());
}

void assign_ids(TimelineExample& ex, const Vocab& vocab) {
  auto fill = [&vocab](TokenizedSentence& s) {
    s.ids.resize(s.toks.size());
    for (size_t i = 0; i < s.toks.size(); ++i) s.ids[i] = vocab.id(s.toks[i]);
  };
  for (auto& ev : ex.events)
    for (auto& s : ev.sentences) fill(s);
  for (auto& s : ex.summary) fill(s);
}

namespace {

TokenizedSentence make_sentence(std::vector<std::string> toks) {
  TokenizedSentence s;
  s.toks = std::move(toks);
  return s;
}

TimelineExample parse_record(const ordered_json& j, long line_no) {
  auto ctx = [line_no](const std::string& what) {
    return "line " + std::to_string(line_no) + ": " + what;
  };
  if (!j.is_object()) throw DataError(ctx("record is not an object"));
  TimelineExample ex;
  ex.id = j.value("id", std::string{});
  if (ex.id.empty()) throw DataError(ctx("missing id"));
  if (!j.contains("events") || !j.at("events").is_array() || j.at("events").empty())
    throw DataError(ctx("record needs >= 1 event"));
  for (const auto& ej : j.at("events")) {
    Event ev;
    ev.time = ej.value("time", std::string{});
    std::vector<std::string> toks;
    if (ej.contains("tokens")) {
      for (const auto& t : ej.at("tokens")) toks.push_back(t.get<std::string>());
    } else {
      toks = tokenize(ej.value("text", std::string{}));
    }
    if (toks.empty()) throw DataError(ctx("event with no tokens"));
    for (auto& sent : split_token_sentences(toks)) ev.sentences.push_back(make_sentence(std::move(sent)));
    ex.events.push_back(std::move(ev));
  }
  if (!j.contains("summary") || !j.at("summary").is_array() || j.at("summary").empty())
    throw DataError(ctx("empty summary"));
  for (const auto& sj : j.at("summary")) {
    auto toks = tokenize(sj.get<std::string>());
    if (!toks.empty()) ex.summary.push_back(make_sentence(std::move(toks)));
  }
  if (ex.summary.empty()) throw DataError(ctx("empty summary"));
  if (j.contains("oracle")) {
    std::vector<int> oracle;
    for (const auto& o : j.at("oracle")) oracle.push_back(o.get<int>());
    ex.oracle = std::move(oracle);
  }
  return ex;
}

void validate_oracle(const TimelineExample& ex, long line_no) {
  if (!ex.oracle) return;
  const auto& o = *ex.oracle;
  long n = ex.num_doc_sentences();
  for (size_t i = 0; i < o.size(); ++i) {
    if (o[i] < 0 || o[i] >= n)
      throw DataError("line " + std::to_string(line_no) + ": oracle index out of range");
    if (i > 0 && o[i] <= o[i - 1])
      throw DataError("line " + std::to_string(line_no) + ": oracle not strictly increasing");
  }
}

}  // namespace

std::vector<TimelineExample> load_corpus(const std::string& path, const LoadOptions& opt) {
  std::ifstream is(path);
  if (!is) throw DataError("cannot open corpus: " + path);
  std::vector<TimelineExample> out;
  std::string line;
  long line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    if (line.empty()) continue;
    try {
      ordered_json j = ordered_json::parse(line);
      TimelineExample ex = parse_record(j, line_no);
      truncate_example(ex, opt.policy);
      if (ex.events.empty())
        throw DataError("line " + std::to_string(line_no) + ": no events after truncation");
      validate_oracle(ex, line_no);
      if (opt.vocab) assign_ids(ex, *opt.vocab);
      out.push_back(std::move(ex));
    } catch (const DataError&) {
      if (opt.strict) throw;
    } catch (const ordered_json::parse_error& e) {
      if (opt.strict)
        throw DataError("line " + std::to_string(line_no) + ": bad JSON: " + e.what());
    }
  }
  return out;
}

void write_corpus(const std::vector<TimelineExample>& examples, const std::string& path) {
  std::ofstream os(path, std::ios::trunc);
  if (!os) throw DataError("cannot write corpus: " + path);
  for (const auto& ex : examples) {
    ordered_json j;
    j["id"] = ex.id;
    j["events"] = ordered_json::array();
    for (const auto& ev : ex.events) {
      ordered_json ej;
      ej["time"] = ev.time;
      std::vector<std::string> toks;
      for (const auto& s : ev.sentences) toks.insert(toks.end(), s.toks.begin(), s.toks.end());
      ej["text"] = join_tokens(toks);
      ej["tokens"] = toks;
      j["events"].push_back(std::move(ej));
    }
    j["summary"] = ordered_json::array();
    for (const auto& s : ex.summary) j["summary"].push_back(join_tokens(s.toks));
    if (ex.oracle) j["oracle"] = *ex.oracle;
    os << j.dump() << '\n';
  }
}

void for_each_record_tokens(const std::string& path,
                            const std::function<void(const std::vector<std::string>&)>& fn) {
  std::ifstream is(path);
  if (!is) throw DataError("cannot open corpus: " + path);
  std::string line;
  long line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    if (line.empty()) continue;
    ordered_json j;
    try {
      j = ordered_json::parse(line);
    } catch (const ordered_json::parse_error& e) {
      throw DataError("line " + std::to_string(line_no) + ": bad JSON: " + e.what());
    }
    TimelineExample ex = parse_record(j, line_no);
    std::vector<std::string> toks;
    for (const auto& ev : ex.events)
      for (const auto& s : ev.sentences) toks.insert(toks.end(), s.toks.begin(), s.toks.end());
    for (const auto& s : ex.summary) toks.insert(toks.end(), s.toks.begin(), s.toks.end());
    fn(toks);
  }
}

Vocab build_vocab(const std::string& corpus_path, long cap) {
  if (cap <= 0) throw UsageError("vocab cap must be positive");
  std::unordered_map<std::string, long> counts;
  std::unordered_map<std::string, long> first_seen;
  long order = 0;
  bool any = false;
  for_each_record_tokens(corpus_path, [&](const std::vector<std::string>& toks) {
    any = true;
    for (const auto& t : toks) {
      auto [it, fresh] = counts.emplace(t, 0);
      ++it->second;
      if (fresh) first_seen.emplace(t, order);
      ++order;
    }
  });
  if (!any) throw DataError("empty corpus: " + corpus_path);

  std::vector<std::string> toks;
  toks.reserve(counts.size());
  for (const auto& [t, c] : counts) toks.push_back(t);
  std::sort(toks.begin(), toks.end(), [&](const std::string& a, const std::string& b) {
    if (counts[a] != counts[b]) return counts[a] > counts[b];
    return first_seen[a] < first_seen[b];
  });
  if (static_cast<long>(toks.size()) > cap) toks.resize(static_cast<size_t>(cap));

  Vocab v;
  for (const auto& t : toks) v.add(t);
  return v;
}

}  // namespace uts
