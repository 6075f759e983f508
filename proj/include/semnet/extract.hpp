// extract.hpp : sentence tokenizer and knowledge-base term retrieval
#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "semnet/kb.hpp"

namespace semnet {

struct Token {
  std::string surface;     // original substring
  std::string normalized;  // lowercase form
  std::size_t sentence_index = 0;
  std::size_t token_index = 0;   // within sentence
  std::size_t span_begin = 0;    // byte offsets into the input
  std::size_t span_end = 0;
};

using Sentence = std::vector<Token>;

// Sentences split on '.', '!', '?', ';' followed by whitespace or end of input.
// Tokens are maximal runs of letters, digits, hyphens and apostrophes (plus any
// non-ASCII bytes); leading/trailing hyphens and apostrophes are trimmed off.
std::vector<Sentence> tokenize(std::string_view text);

struct TermOccurrence {
  std::string term;              // matched lexicon entry, '_'-separated
  int n = 1;                     // '_'-separated parts of term
  std::size_t sentence_index = 0;
  std::size_t first_token_index = 0;
  std::size_t token_count = 1;   // tokens consumed from the sentence
  std::size_t span_begin = 0;
  std::size_t span_end = 0;
};

struct TermSet {
  std::vector<std::string> terms;  // unique, in first-occurrence order
  std::vector<TermOccurrence> occurrences;
  std::size_t n_terms() const { return terms.size(); }
};

using StopwordSet = std::unordered_set<std::string>;
using LemmaMap = std::unordered_map<std::string, std::string>;

// Greedy longest-match scan: at each token position windows of length
// min(max_n, kb.max_ngram())..1 are tried, joined with '_'; lexicon misses on
// hyphenated forms retry with '-' replaced by '_', and the lemma map is
// consulted for every window. Matches advance past their window; stopword
// unigrams are skipped.
TermSet retrieve_terms(const std::vector<Sentence>& sentences, const KnowledgeBase& kb,
                       int max_n, const StopwordSet& stopwords,
                       const LemmaMap& lemma_map = {});

// ~50 English function words; overridable via a stopword file.
const StopwordSet& default_stopwords();

// One lowercase token per line, '#' starts a comment.
StopwordSet load_stopwords(const std::filesystem::path& path);

// Tab-separated "<surface>\t<lemma>" lines.
LemmaMap load_lemma_map(const std::filesystem::path& path);

std::string termset_to_json(const TermSet& terms);
TermSet termset_from_json(const std::string& text, const std::string& source_name = "termset");

// Unique-term counts keyed by n-gram length, Table-style: {unigrams, bigrams, ...}.
std::vector<std::size_t> ngram_breakdown(const TermSet& terms, int max_n = 3);

}  // namespace semnet
