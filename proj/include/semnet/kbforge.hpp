// kbforge.hpp : build a compact embedding KB from a raw corpus
// (phrase joining -> windowed co-occurrence -> PPMI -> truncated SVD)
#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "semnet/extract.hpp"

namespace semnet {

// Symmetric co-occurrence statistics. pair_counts is keyed by (i, j) with
// i <= j and stores the full-matrix entry value: for i < j the same value sits
// at (i,j) and (j,i); the diagonal already includes both orientations.
struct CooccurrenceCounts {
  std::vector<std::string> vocab;  // first-occurrence order
  std::map<std::pair<int, int>, std::int64_t> pair_counts;
  std::vector<std::int64_t> token_counts;  // row sums
  std::int64_t total = 0;                  // sum over the full matrix

  std::int64_t pair(int i, int j) const {
    auto it = pair_counts.find(i <= j ? std::make_pair(i, j) : std::make_pair(j, i));
    return it == pair_counts.end() ? 0 : it->second;
  }
};

// Counts pairs (p, p+o) for offsets 1..window within each sentence, both
// orientations, every offset weighted equally. Phrases are greedily pre-joined
// into single '_'-tokens; tokens rarer than min_count are dropped from the
// vocabulary before pairing (window offsets still span the dropped positions).
CooccurrenceCounts count_cooccurrences(const std::vector<Sentence>& corpus, int window,
                                       const std::vector<std::string>& phrases = {},
                                       int min_count = 1);

// Sparse non-negative rows, one per vocab entry, dimension |vocab|.
struct PpmiVectors {
  std::vector<std::string> vocab;
  std::vector<std::vector<std::pair<int, double>>> rows;  // sorted by column
};

// entry(w,c) = max(0, ln(total * pair / (token_count_w * token_count_c)))
PpmiVectors ppmi(const CooccurrenceCounts& counts);

struct DenseMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> values;  // row-major

  double at(std::size_t r, std::size_t c) const { return values[r * cols + c]; }
  double& at(std::size_t r, std::size_t c) { return values[r * cols + c]; }
};

// Rank-d truncated SVD factor U_d * S_d of the PPMI matrix via randomized
// projection (Gaussian sketch of width d+8, 2 power iterations). Rows are the
// embedding vectors. Deterministic for a fixed seed.
DenseMatrix reduce(const PpmiVectors& vectors, std::size_t dims, std::uint64_t seed);

// Emits the embedding KB file format; returns the number of zero rows dropped.
// Throws when every row is zero.
std::size_t write_embedding_kb(const std::vector<std::string>& vocab,
                               const DenseMatrix& rows, const std::filesystem::path& path);

// Raw PPMI rows written densely, for forging without reduction.
std::size_t write_embedding_kb(const PpmiVectors& vectors, const std::filesystem::path& path);

// One phrase per line, words separated by spaces.
std::vector<std::string> load_phrases(const std::filesystem::path& path);

}  // namespace semnet
