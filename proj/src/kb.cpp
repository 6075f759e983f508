#include "semnet/kb.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <deque>
#include <set>
#include <sstream>

#include "semnet/util.hpp"

namespace semnet {

namespace {

constexpr double kMinVectorNorm = 1e-12;

std::vector<std::string> split_lines(const std::string& content) {
  std::vector<std::string> lines = split(content, '\n');
  for (std::string& line : lines) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
  }
  // a trailing newline yields one empty final element
  if (!lines.empty() && lines.back().empty()) lines.pop_back();
  return lines;
}

bool has_upper_ascii(std::string_view s) {
  return std::any_of(s.begin(), s.end(), [](char c) { return c >= 'A' && c <= 'Z'; });
}

void check_term_normalized(const std::string& file, std::size_t line,
                           const std::string& term) {
  if (term.empty()) throw ParseError(file, line, "empty term");
  if (has_upper_ascii(term))
    throw ParseError(file, line, "term is not lowercase: '" + term + "'");
}

bool parse_size(std::string_view s, std::size_t& out) {
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

bool parse_component(std::string_view s, double& out) {
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

int lexicon_max_ngram(const EmbeddingKb& kb) {
  int max_n = 1;
  for (const auto& [term, vec] : kb.vectors) max_n = std::max(max_n, ngram_parts(term));
  return max_n;
}

int lexicon_max_ngram(const TaxonomyKb& kb) {
  int max_n = 1;
  for (const auto& lemma_list : kb.lemmas)
    for (const std::string& lemma : lemma_list) max_n = std::max(max_n, ngram_parts(lemma));
  return max_n;
}

double embedding_similarity(const EmbeddingKb& kb, const std::string& a,
                            const std::string& b) {
  auto ita = kb.vectors.find(a);
  if (ita == kb.vectors.end()) throw TermNotFoundError(a);
  auto itb = kb.vectors.find(b);
  if (itb == kb.vectors.end()) throw TermNotFoundError(b);
  const std::vector<double>& va = ita->second;
  const std::vector<double>& vb = itb->second;
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (std::size_t i = 0; i < va.size(); ++i) {
    dot += va[i] * vb[i];
    na += va[i] * va[i];
    nb += vb[i] * vb[i];
  }
  double cosine = dot / (std::sqrt(na) * std::sqrt(nb));
  return std::clamp(cosine, 0.0, 1.0);
}

double taxonomy_similarity(const TaxonomyKb& kb, const std::string& a,
                           const std::string& b) {
  auto ita = kb.lemma_index.find(a);
  if (ita == kb.lemma_index.end()) throw TermNotFoundError(a);
  auto itb = kb.lemma_index.find(b);
  if (itb == kb.lemma_index.end()) throw TermNotFoundError(b);

  std::vector<char> is_target(kb.synset_ids.size(), 0);
  for (int s : itb->second) is_target[static_cast<std::size_t>(s)] = 1;
  for (int s : ita->second)
    if (is_target[static_cast<std::size_t>(s)]) return 1.0;  // shared synset, d = 0

  // multi-source BFS over the undirected IS-A graph
  std::vector<int> dist(kb.synset_ids.size(), -1);
  std::deque<int> queue;
  for (int s : ita->second) {
    dist[static_cast<std::size_t>(s)] = 0;
    queue.push_back(s);
  }
  while (!queue.empty()) {
    int u = queue.front();
    queue.pop_front();
    for (int v : kb.adjacency[static_cast<std::size_t>(u)]) {
      if (dist[static_cast<std::size_t>(v)] >= 0) continue;
      dist[static_cast<std::size_t>(v)] = dist[static_cast<std::size_t>(u)] + 1;
      if (is_target[static_cast<std::size_t>(v)])
        return 1.0 / (1.0 + dist[static_cast<std::size_t>(v)]);
      queue.push_back(v);
    }
  }
  return 0.0;  // no connecting path
}

}  // namespace

bool KnowledgeBase::contains(const std::string& term) const {
  if (is_embedding()) return embedding().vectors.count(term) > 0;
  return taxonomy().lemma_index.count(term) > 0;
}

std::size_t KnowledgeBase::term_count() const {
  if (is_embedding()) return embedding().vectors.size();
  return taxonomy().lemma_index.size();
}

std::vector<std::string> KnowledgeBase::terms() const {
  std::vector<std::string> out;
  if (is_embedding()) {
    out.reserve(embedding().vectors.size());
    for (const auto& [term, vec] : embedding().vectors) out.push_back(term);
  } else {
    out.reserve(taxonomy().lemma_index.size());
    for (const auto& [lemma, synsets] : taxonomy().lemma_index) out.push_back(lemma);
  }
  std::sort(out.begin(), out.end());
  return out;
}

double KnowledgeBase::similarity_uncached(const std::string& a, const std::string& b) const {
  if (a == b) {
    if (!contains(a)) throw TermNotFoundError(a);
    return 1.0;
  }
  if (is_embedding()) return embedding_similarity(embedding(), a, b);
  return taxonomy_similarity(taxonomy(), a, b);
}

double KnowledgeBase::similarity(const std::string& a, const std::string& b) const {
  const std::string& lo = a <= b ? a : b;
  const std::string& hi = a <= b ? b : a;
  std::string key = lo + '\x1e' + hi;
  {
    std::lock_guard<std::mutex> lock(memo_->mutex);
    auto it = memo_->values.find(key);
    if (it != memo_->values.end()) return it->second;
  }
  double value = similarity_uncached(lo, hi);
  std::lock_guard<std::mutex> lock(memo_->mutex);
  memo_->values.emplace(std::move(key), value);
  return value;
}

KnowledgeBase make_embedding_kb(EmbeddingKb kb, std::string name) {
  if (kb.dims == 0) throw ParseError(name, 0, "embedding dimension must be positive");
  for (const auto& [term, vec] : kb.vectors) {
    check_term_normalized(name, 0, term);
    if (vec.size() != kb.dims)
      throw ParseError(name, 0, "vector for '" + term + "' has wrong dimension");
    double norm_sq = 0.0;
    for (double c : vec) {
      if (!std::isfinite(c))
        throw ParseError(name, 0, "non-finite component in vector for '" + term + "'");
      norm_sq += c * c;
    }
    if (std::sqrt(norm_sq) < kMinVectorNorm)
      throw ParseError(name, 0, "zero vector for '" + term + "'");
  }
  KnowledgeBase out;
  out.max_ngram_ = lexicon_max_ngram(kb);
  out.backend_ = std::move(kb);
  out.name_ = std::move(name);
  return out;
}

KnowledgeBase make_taxonomy_kb(TaxonomyKb kb, std::string name) {
  const std::size_t n = kb.synset_ids.size();
  if (kb.lemmas.size() != n) throw ParseError(name, 0, "lemma lists do not match synsets");
  for (std::size_t i = 0; i < n; ++i) {
    if (kb.lemmas[i].empty())
      throw ParseError(name, 0, "synset '" + kb.synset_ids[i] + "' has no lemmas");
    for (const std::string& lemma : kb.lemmas[i]) check_term_normalized(name, 0, lemma);
  }
  for (const auto& [parent, child] : kb.isa_edges) {
    if (parent < 0 || child < 0 || static_cast<std::size_t>(parent) >= n ||
        static_cast<std::size_t>(child) >= n)
      throw ParseError(name, 0, "edge references unknown synset");
    if (parent == child) throw ParseError(name, 0, "self-loop IS-A edge");
  }

  kb.lemma_index.clear();
  for (std::size_t i = 0; i < n; ++i)
    for (const std::string& lemma : kb.lemmas[i])
      kb.lemma_index[lemma].push_back(static_cast<int>(i));

  kb.adjacency.assign(n, {});
  std::set<std::pair<int, int>> seen;
  for (const auto& [parent, child] : kb.isa_edges) {
    if (!seen.insert({parent, child}).second) continue;
    kb.adjacency[static_cast<std::size_t>(parent)].push_back(child);
    kb.adjacency[static_cast<std::size_t>(child)].push_back(parent);
  }

  KnowledgeBase out;
  out.max_ngram_ = lexicon_max_ngram(kb);
  out.backend_ = std::move(kb);
  out.name_ = std::move(name);
  return out;
}

KnowledgeBase load_embedding_kb(const std::filesystem::path& path) {
  const std::string file = path.string();
  std::vector<std::string> lines = split_lines(read_text_file(path));
  if (lines.empty()) throw ParseError(file, 1, "missing header line");

  std::vector<std::string> header = split(lines[0], ' ');
  std::size_t count = 0, dims = 0;
  if (header.size() != 2 || !parse_size(header[0], count) || !parse_size(header[1], dims) ||
      dims == 0)
    throw ParseError(file, 1, "malformed header, expected '<count> <dims>'");

  EmbeddingKb kb;
  kb.dims = dims;
  kb.vectors.reserve(count);
  std::size_t records = 0;
  for (std::size_t li = 1; li < lines.size(); ++li) {
    const std::string& line = lines[li];
    if (line.empty()) continue;
    const std::size_t line_no = li + 1;
    std::vector<std::string> fields = split(line, ' ');
    if (fields.size() != dims + 1)
      throw ParseError(file, line_no,
                       "expected 1 term and " + std::to_string(dims) + " components, got " +
                           std::to_string(fields.size()) + " fields");
    const std::string& term = fields[0];
    check_term_normalized(file, line_no, term);
    if (kb.vectors.count(term) > 0)
      throw ParseError(file, line_no, "duplicate term '" + term + "'");
    std::vector<double> vec(dims);
    double norm_sq = 0.0;
    for (std::size_t d = 0; d < dims; ++d) {
      double c = 0.0;
      if (!parse_component(fields[d + 1], c))
        throw ParseError(file, line_no, "bad component '" + fields[d + 1] + "'");
      if (!std::isfinite(c))
        throw ParseError(file, line_no, "non-finite component '" + fields[d + 1] + "'");
      vec[d] = c;
      norm_sq += c * c;
    }
    if (std::sqrt(norm_sq) < kMinVectorNorm)
      throw ParseError(file, line_no, "zero vector for term '" + term + "'");
    kb.vectors.emplace(term, std::move(vec));
    ++records;
  }
  if (records != count)
    throw ParseError(file, lines.size(),
                     "header declares " + std::to_string(count) + " terms but file has " +
                         std::to_string(records));

  return make_embedding_kb(std::move(kb), path.stem().string());
}

KnowledgeBase load_taxonomy_kb(const std::filesystem::path& path) {
  const std::string file = path.string();
  std::vector<std::string> lines = split_lines(read_text_file(path));

  TaxonomyKb kb;
  std::unordered_map<std::string, int> id_of;
  for (std::size_t li = 0; li < lines.size(); ++li) {
    const std::string& line = lines[li];
    if (line.empty()) continue;
    const std::size_t line_no = li + 1;
    std::vector<std::string> fields = split(line, '\t');
    if (fields.size() != 3)
      throw ParseError(file, line_no, "expected 3 tab-separated fields");
    if (fields[0] == "S") {
      const std::string& id = fields[1];
      if (id.empty()) throw ParseError(file, line_no, "empty synset id");
      if (id_of.count(id) > 0)
        throw ParseError(file, line_no, "duplicate synset id '" + id + "'");
      std::vector<std::string> lemma_list;
      for (const std::string& lemma : split(fields[2], '|')) {
        if (lemma.empty()) continue;
        check_term_normalized(file, line_no, lemma);
        lemma_list.push_back(lemma);
      }
      if (lemma_list.empty())
        throw ParseError(file, line_no, "synset '" + id + "' has no lemmas");
      id_of.emplace(id, static_cast<int>(kb.synset_ids.size()));
      kb.synset_ids.push_back(id);
      kb.lemmas.push_back(std::move(lemma_list));
    } else if (fields[0] == "E") {
      auto pit = id_of.find(fields[1]);
      if (pit == id_of.end())
        throw ParseError(file, line_no, "edge references unknown synset '" + fields[1] + "'");
      auto cit = id_of.find(fields[2]);
      if (cit == id_of.end())
        throw ParseError(file, line_no, "edge references unknown synset '" + fields[2] + "'");
      if (pit->second == cit->second)
        throw ParseError(file, line_no, "self-loop IS-A edge on '" + fields[1] + "'");
      kb.isa_edges.emplace_back(pit->second, cit->second);
    } else {
      throw ParseError(file, line_no, "unknown record type '" + fields[0] + "'");
    }
  }

  return make_taxonomy_kb(std::move(kb), path.stem().string());
}

void save_kb(const KnowledgeBase& kb, const std::filesystem::path& path) {
  std::ostringstream out;
  if (kb.is_embedding()) {
    const EmbeddingKb& e = kb.embedding();
    std::vector<std::string> terms = kb.terms();
    out << terms.size() << ' ' << e.dims << '\n';
    for (const std::string& term : terms) {
      out << term;
      for (double c : e.vectors.at(term)) out << ' ' << format_double(c);
      out << '\n';
    }
  } else {
    const TaxonomyKb& t = kb.taxonomy();
    for (std::size_t i = 0; i < t.synset_ids.size(); ++i)
      out << "S\t" << t.synset_ids[i] << '\t' << join(t.lemmas[i], '|') << '\n';
    for (const auto& [parent, child] : t.isa_edges)
      out << "E\t" << t.synset_ids[static_cast<std::size_t>(parent)] << '\t'
          << t.synset_ids[static_cast<std::size_t>(child)] << '\n';
  }
  write_text_file(path, out.str());
}

}  // namespace semnet
