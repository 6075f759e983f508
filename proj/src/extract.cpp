#include "semnet/extract.hpp"

#include <algorithm>
#include <cctype>

#include "json.hpp"
#include "semnet/util.hpp"

namespace semnet {

namespace {

bool is_token_char(unsigned char c) {
  return std::isalnum(c) != 0 || c == '-' || c == '\'' || c >= 0x80;
}

bool is_trim_char(unsigned char c) { return c == '-' || c == '\''; }

bool is_sentence_end(std::string_view text, std::size_t i) {
  char c = text[i];
  if (c != '.' && c != '!' && c != '?' && c != ';') return false;
  if (i + 1 == text.size()) return true;
  return std::isspace(static_cast<unsigned char>(text[i + 1])) != 0;
}

void tokenize_range(std::string_view text, std::size_t begin, std::size_t end,
                    std::vector<Sentence>& sentences) {
  Sentence sentence;
  std::size_t i = begin;
  while (i < end) {
    if (!is_token_char(static_cast<unsigned char>(text[i]))) {
      ++i;
      continue;
    }
    std::size_t run_end = i;
    while (run_end < end && is_token_char(static_cast<unsigned char>(text[run_end])))
      ++run_end;
    // strip surrounding hyphens/apostrophes, keep internal ones
    std::size_t tok_begin = i, tok_end = run_end;
    while (tok_begin < tok_end && is_trim_char(static_cast<unsigned char>(text[tok_begin])))
      ++tok_begin;
    while (tok_end > tok_begin && is_trim_char(static_cast<unsigned char>(text[tok_end - 1])))
      --tok_end;
    if (tok_end > tok_begin) {
      Token token;
      token.surface = std::string(text.substr(tok_begin, tok_end - tok_begin));
      token.normalized = to_lower_ascii(token.surface);
      token.sentence_index = sentences.size();
      token.token_index = sentence.size();
      token.span_begin = tok_begin;
      token.span_end = tok_end;
      sentence.push_back(std::move(token));
    }
    i = run_end;
  }
  if (!sentence.empty()) sentences.push_back(std::move(sentence));
}

std::string replace_hyphens(const std::string& s) {
  std::string out = s;
  std::replace(out.begin(), out.end(), '-', '_');
  return out;
}

// Lexicon candidates for one window, in priority order.
const std::string* match_window(const std::string& joined, const KnowledgeBase& kb,
                                const LemmaMap& lemma_map, std::string& storage) {
  if (kb.contains(joined)) {
    storage = joined;
    return &storage;
  }
  if (auto it = lemma_map.find(joined); it != lemma_map.end() && kb.contains(it->second)) {
    storage = it->second;
    return &storage;
  }
  std::string dehyphenated = replace_hyphens(joined);
  if (dehyphenated != joined) {
    if (kb.contains(dehyphenated)) {
      storage = std::move(dehyphenated);
      return &storage;
    }
    if (auto it = lemma_map.find(dehyphenated);
        it != lemma_map.end() && kb.contains(it->second)) {
      storage = it->second;
      return &storage;
    }
  }
  return nullptr;
}

}  // namespace

std::vector<Sentence> tokenize(std::string_view text) {
  std::vector<Sentence> sentences;
  std::size_t start = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (is_sentence_end(text, i)) {
      tokenize_range(text, start, i + 1, sentences);
      start = i + 1;
    }
  }
  if (start < text.size()) tokenize_range(text, start, text.size(), sentences);
  return sentences;
}

TermSet retrieve_terms(const std::vector<Sentence>& sentences, const KnowledgeBase& kb,
                       int max_n, const StopwordSet& stopwords, const LemmaMap& lemma_map) {
  TermSet result;
  std::unordered_set<std::string> seen;
  const int window_limit = std::min(max_n, kb.max_ngram());

  for (const Sentence& sentence : sentences) {
    std::size_t i = 0;
    while (i < sentence.size()) {
      const int longest =
          static_cast<int>(std::min<std::size_t>(window_limit, sentence.size() - i));
      std::size_t advance = 1;
      for (int win = longest; win >= 1; --win) {
        if (win == 1 && stopwords.count(sentence[i].normalized) > 0) continue;
        std::string joined = sentence[i].normalized;
        for (int k = 1; k < win; ++k) {
          joined += '_';
          joined += sentence[i + static_cast<std::size_t>(k)].normalized;
        }
        std::string matched;
        if (match_window(joined, kb, lemma_map, matched) != nullptr) {
          TermOccurrence occ;
          occ.term = matched;
          occ.n = ngram_parts(matched);
          occ.sentence_index = sentence[i].sentence_index;
          occ.first_token_index = i;
          occ.token_count = static_cast<std::size_t>(win);
          occ.span_begin = sentence[i].span_begin;
          occ.span_end = sentence[i + static_cast<std::size_t>(win) - 1].span_end;
          if (seen.insert(matched).second) result.terms.push_back(matched);
          result.occurrences.push_back(std::move(occ));
          advance = static_cast<std::size_t>(win);
          break;
        }
      }
      i += advance;
    }
  }
  return result;
}

const StopwordSet& default_stopwords() {
  static const StopwordSet words = {
      "a",    "an",   "the",   "and",    "or",   "but",  "if",   "that", "this",
      "these","those","there", "it",     "its",  "is",   "are",  "was",  "were",
      "be",   "as",   "at",    "by",     "for",  "from", "in",   "into", "of",
      "on",   "to",   "with",  "not",    "no",   "so",   "such", "can",  "could",
      "may",  "should","will", "would",  "do",   "have", "has",  "had",  "they",
      "them", "their","i",     "we",     "he",   "she",  "his",  "her",  "our",
      "also"};
  return words;
}

StopwordSet load_stopwords(const std::filesystem::path& path) {
  StopwordSet out;
  std::vector<std::string> lines = split(read_text_file(path), '\n');
  for (std::string& line : lines) {
    if (std::size_t hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    while (!line.empty() && std::isspace(static_cast<unsigned char>(line.back())))
      line.pop_back();
    std::size_t start = 0;
    while (start < line.size() && std::isspace(static_cast<unsigned char>(line[start])))
      ++start;
    if (start < line.size()) out.insert(line.substr(start));
  }
  return out;
}

LemmaMap load_lemma_map(const std::filesystem::path& path) {
  LemmaMap out;
  const std::string file = path.string();
  std::vector<std::string> lines = split(read_text_file(path), '\n');
  for (std::size_t li = 0; li < lines.size(); ++li) {
    std::string line = lines[li];
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> fields = split(line, '\t');
    if (fields.size() != 2 || fields[0].empty() || fields[1].empty())
      throw ParseError(file, li + 1, "expected '<surface>\\t<lemma>'");
    out[fields[0]] = fields[1];
  }
  return out;
}

std::string termset_to_json(const TermSet& terms) {
  nlohmann::ordered_json doc;
  doc["n_terms"] = terms.n_terms();
  doc["terms"] = terms.terms;
  nlohmann::ordered_json occs = nlohmann::ordered_json::array();
  for (const TermOccurrence& occ : terms.occurrences) {
    nlohmann::ordered_json o;
    o["term"] = occ.term;
    o["n"] = occ.n;
    o["sentence"] = occ.sentence_index;
    o["token"] = occ.first_token_index;
    o["span"] = {occ.span_begin, occ.span_end};
    occs.push_back(std::move(o));
  }
  doc["occurrences"] = std::move(occs);
  return doc.dump(2) + "\n";
}

TermSet termset_from_json(const std::string& text, const std::string& source_name) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(source_name, 0, std::string("invalid JSON: ") + e.what());
  }
  try {
    TermSet out;
    out.terms = doc.at("terms").get<std::vector<std::string>>();
    for (const auto& o : doc.at("occurrences")) {
      TermOccurrence occ;
      occ.term = o.at("term").get<std::string>();
      occ.n = o.at("n").get<int>();
      occ.sentence_index = o.at("sentence").get<std::size_t>();
      occ.first_token_index = o.at("token").get<std::size_t>();
      occ.token_count = static_cast<std::size_t>(occ.n);
      occ.span_begin = o.at("span").at(0).get<std::size_t>();
      occ.span_end = o.at("span").at(1).get<std::size_t>();
      out.occurrences.push_back(std::move(occ));
    }
    if (doc.at("n_terms").get<std::size_t>() != out.terms.size())
      throw ParseError(source_name, 0, "n_terms does not match the term list");
    return out;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(source_name, 0, std::string("bad term set document: ") + e.what());
  }
}

std::vector<std::size_t> ngram_breakdown(const TermSet& terms, int max_n) {
  std::vector<std::size_t> counts(static_cast<std::size_t>(std::max(max_n, 1)), 0);
  for (const std::string& term : terms.terms) {
    int parts = ngram_parts(term);
    std::size_t bucket = static_cast<std::size_t>(std::clamp(parts, 1, max_n)) - 1;
    ++counts[bucket];
  }
  return counts;
}

}  // namespace semnet
