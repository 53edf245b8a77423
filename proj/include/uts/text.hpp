#pragma once

#include <string>
#include <vector>

namespace uts {

// Lowercasing whitespace+punctuation tokenizer. Punctuation characters become
// standalone tokens; contiguous letters/digits stay together.
std::vector<std::string> tokenize(const std::string& text);

// Splits raw text on sentence-final . ! ? (delimiter kept with its sentence).
std::vector<std::string> split_sentences(const std::string& text);

// Splits an already-tokenized stream into sentences on ./!/? tokens.
std::vector<std::vector<std::string>> split_token_sentences(
    const std::vector<std::string>& toks);

std::string join_tokens(const std::vector<std::string>& toks);

}  // namespace uts
