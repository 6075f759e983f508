// kb.hpp : knowledge-base loading, lexicon membership, pairwise term similarity
#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <mutex>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <variant>
#include <vector>

namespace semnet {

// Dense term vectors, all of dimension dims, none with norm below 1e-12.
struct EmbeddingKb {
  std::unordered_map<std::string, std::vector<double>> vectors;
  std::size_t dims = 0;
};

// Synset taxonomy with an undirected view of the IS-A edges.
struct TaxonomyKb {
  std::vector<std::string> synset_ids;             // declaration order
  std::vector<std::vector<std::string>> lemmas;    // per synset, >= 1 each
  std::vector<std::pair<int, int>> isa_edges;      // (parent, child) indices
  std::unordered_map<std::string, std::vector<int>> lemma_index;
  std::vector<std::vector<int>> adjacency;         // undirected neighbour lists
};

// Immutable after load; queries are safe from any number of threads.
class KnowledgeBase {
 public:
  bool contains(const std::string& term) const;

  // Association strength in [0,1]. Embedding backend: non-negative cosine.
  // Taxonomy backend: 1/(1+d) over the best synset pair, 0 when no path exists.
  // Throws TermNotFoundError for out-of-lexicon terms. Symmetric, memoized.
  double similarity(const std::string& a, const std::string& b) const;

  const std::string& name() const { return name_; }
  int max_ngram() const { return max_ngram_; }
  std::size_t term_count() const;
  std::vector<std::string> terms() const;  // sorted, for serialization and tests

  bool is_embedding() const { return std::holds_alternative<EmbeddingKb>(backend_); }
  const EmbeddingKb& embedding() const { return std::get<EmbeddingKb>(backend_); }
  const TaxonomyKb& taxonomy() const { return std::get<TaxonomyKb>(backend_); }

  KnowledgeBase(KnowledgeBase&&) noexcept = default;
  KnowledgeBase& operator=(KnowledgeBase&&) noexcept = default;

  friend KnowledgeBase load_embedding_kb(const std::filesystem::path& path);
  friend KnowledgeBase load_taxonomy_kb(const std::filesystem::path& path);
  friend KnowledgeBase make_embedding_kb(EmbeddingKb kb, std::string name);
  friend KnowledgeBase make_taxonomy_kb(TaxonomyKb kb, std::string name);

 private:
  KnowledgeBase() = default;

  double similarity_uncached(const std::string& a, const std::string& b) const;

  struct MemoCache {
    std::mutex mutex;
    std::unordered_map<std::string, double> values;
  };

  std::variant<EmbeddingKb, TaxonomyKb> backend_;
  std::string name_;
  int max_ngram_ = 1;
  std::unique_ptr<MemoCache> memo_ = std::make_unique<MemoCache>();
};

// File format (UTF-8 text): header "<count> <dims>", then one term per line,
// "<term> <c1> ... <cD>" space-separated. Multiword terms use '_'.
KnowledgeBase load_embedding_kb(const std::filesystem::path& path);

// File format (UTF-8, tab-separated): "S\t<id>\t<lemma1>|<lemma2>|..." declares
// a synset, "E\t<parent>\t<child>" an IS-A edge; synset records come first.
KnowledgeBase load_taxonomy_kb(const std::filesystem::path& path);

// Re-emits the load format; loading the result answers identically.
void save_kb(const KnowledgeBase& kb, const std::filesystem::path& path);

// In-memory construction, mainly for tests; validates the same invariants.
KnowledgeBase make_embedding_kb(EmbeddingKb kb, std::string name);
KnowledgeBase make_taxonomy_kb(TaxonomyKb kb, std::string name);

}  // namespace semnet
