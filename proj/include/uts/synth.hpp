#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "uts/corpus.hpp"

namespace uts {

// Template grammar for the synthetic timeline corpus. Each event carries a
// key fact sentence "in YEAR , NAME [famously] VERB OBJECT ." plus filler;
// the summary paraphrases the marked events in time order, and the oracle
// points at their key sentences.
struct SynthConfig {
  long min_events = 3;
  long max_events = 8;
  long max_important = 3;
  long max_distractors = 2;
  long year_lo = 1900;
  long year_hi = 1979;
  std::vector<std::string> names = {"alice", "bruno",  "clara", "dmitri", "elena",
                                    "felix", "greta",  "hugo",  "irene",  "jonas"};
  std::vector<std::string> verbs = {"founded", "visited", "published", "won",
                                    "joined",  "left",    "built",     "wrote",
                                    "met",     "moved"};
  std::vector<std::string> verb_synonyms = {"established", "toured",   "released",
                                            "claimed",     "entered",  "departed",
                                            "constructed", "penned",   "encountered",
                                            "relocated"};
  std::vector<std::string> objects = {"the academy",     "the institute", "the gallery",
                                      "the harbor",      "the festival",  "the council",
                                      "the orchestra",   "the expedition", "the observatory",
                                      "the workshop"};
  std::vector<std::string> fillers = {
      "the winter was unusually cold .",
      "crowds gathered near the old square .",
      "newspapers covered the story widely .",
      "little else happened that season .",
      "the journey took nearly two weeks .",
      "friends recalled the period fondly .",
      "records from that era are scarce .",
      "the city kept changing rapidly ."};

  void validate() const;
};

std::vector<TimelineExample> generate_synthetic(uint64_t seed, long n_examples,
                                                const SynthConfig& cfg);

// Deterministic given (seed, n, cfg): identical bytes on every run.
void write_synthetic(uint64_t seed, long n_examples, const SynthConfig& cfg,
                     const std::string& out_path);

}  // namespace uts
