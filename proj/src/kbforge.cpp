#include "semnet/kbforge.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "semnet/util.hpp"

namespace semnet {

namespace {

using TokenRow = std::vector<std::string>;

// Greedily replaces phrase word sequences with single '_'-joined tokens,
// longest phrase first at each position.
std::vector<TokenRow> join_phrases(const std::vector<Sentence>& corpus,
                                   const std::vector<std::string>& phrases) {
  std::vector<std::vector<std::string>> phrase_words;
  for (const std::string& phrase : phrases) {
    std::string spaced = phrase;
    std::replace(spaced.begin(), spaced.end(), '_', ' ');
    std::vector<std::string> words;
    for (const std::string& w : split(spaced, ' '))
      if (!w.empty()) words.push_back(to_lower_ascii(w));
    if (words.size() >= 2) phrase_words.push_back(std::move(words));
  }
  std::stable_sort(phrase_words.begin(), phrase_words.end(),
                   [](const auto& a, const auto& b) { return a.size() > b.size(); });

  std::vector<TokenRow> out;
  out.reserve(corpus.size());
  for (const Sentence& sentence : corpus) {
    TokenRow row;
    std::size_t i = 0;
    while (i < sentence.size()) {
      std::size_t consumed = 1;
      std::string token = sentence[i].normalized;
      for (const auto& words : phrase_words) {
        if (i + words.size() > sentence.size()) continue;
        bool match = true;
        for (std::size_t k = 0; k < words.size(); ++k) {
          if (sentence[i + k].normalized != words[k]) {
            match = false;
            break;
          }
        }
        if (match) {
          token = join(words, '_');
          consumed = words.size();
          break;
        }
      }
      row.push_back(std::move(token));
      i += consumed;
    }
    out.push_back(std::move(row));
  }
  return out;
}

double gaussian(SplitMix64& rng) {
  double u1 = rng.next_unit();
  double u2 = rng.next_unit();
  if (u1 < 1e-300) u1 = 1e-300;
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

// columns of a (rows x cols, row-major) -> orthonormal; columns that collapse
// under projection (linearly dependent input) are zeroed, not normalized noise
void orthonormalize_columns(DenseMatrix& a) {
  for (std::size_t c = 0; c < a.cols; ++c) {
    double norm_before = 0.0;
    for (std::size_t r = 0; r < a.rows; ++r) norm_before += a.at(r, c) * a.at(r, c);
    norm_before = std::sqrt(norm_before);
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t prev = 0; prev < c; ++prev) {
        double dot = 0.0;
        for (std::size_t r = 0; r < a.rows; ++r) dot += a.at(r, c) * a.at(r, prev);
        for (std::size_t r = 0; r < a.rows; ++r) a.at(r, c) -= dot * a.at(r, prev);
      }
    }
    double norm = 0.0;
    for (std::size_t r = 0; r < a.rows; ++r) norm += a.at(r, c) * a.at(r, c);
    norm = std::sqrt(norm);
    if (norm <= 1e-10 * norm_before || norm < 1e-300) {
      for (std::size_t r = 0; r < a.rows; ++r) a.at(r, c) = 0.0;
    } else {
      for (std::size_t r = 0; r < a.rows; ++r) a.at(r, c) /= norm;
    }
  }
}

DenseMatrix multiply(const DenseMatrix& a, const DenseMatrix& b) {
  DenseMatrix out;
  out.rows = a.rows;
  out.cols = b.cols;
  out.values.assign(out.rows * out.cols, 0.0);
  for (std::size_t i = 0; i < a.rows; ++i)
    for (std::size_t k = 0; k < a.cols; ++k) {
      double aik = a.at(i, k);
      if (aik == 0.0) continue;
      for (std::size_t j = 0; j < b.cols; ++j) out.at(i, j) += aik * b.at(k, j);
    }
  return out;
}

DenseMatrix transpose(const DenseMatrix& a) {
  DenseMatrix out;
  out.rows = a.cols;
  out.cols = a.rows;
  out.values.assign(out.rows * out.cols, 0.0);
  for (std::size_t i = 0; i < a.rows; ++i)
    for (std::size_t j = 0; j < a.cols; ++j) out.at(j, i) = a.at(i, j);
  return out;
}

// Cyclic Jacobi for a symmetric matrix; eigenvectors end up in the columns of v.
void jacobi_eigen(DenseMatrix a, std::vector<double>& eigenvalues, DenseMatrix& v) {
  const std::size_t n = a.rows;
  v.rows = v.cols = n;
  v.values.assign(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) v.at(i, i) = 1.0;

  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0, diag = 0.0;
    for (std::size_t p = 0; p < n; ++p) {
      diag += a.at(p, p) * a.at(p, p);
      for (std::size_t q = p + 1; q < n; ++q) off += a.at(p, q) * a.at(p, q);
    }
    if (off <= 1e-30 * std::max(diag, 1e-300)) break;

    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        double apq = a.at(p, q);
        if (std::abs(apq) < 1e-300) continue;
        double theta = (a.at(q, q) - a.at(p, p)) / (2.0 * apq);
        double t = (theta >= 0.0 ? 1.0 : -1.0) /
                   (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        double c = 1.0 / std::sqrt(t * t + 1.0);
        double s = t * c;

        for (std::size_t k = 0; k < n; ++k) {
          double akp = a.at(k, p), akq = a.at(k, q);
          a.at(k, p) = c * akp - s * akq;
          a.at(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          double apk = a.at(p, k), aqk = a.at(q, k);
          a.at(p, k) = c * apk - s * aqk;
          a.at(q, k) = s * apk + c * aqk;
        }
        for (std::size_t k = 0; k < n; ++k) {
          double vkp = v.at(k, p), vkq = v.at(k, q);
          v.at(k, p) = c * vkp - s * vkq;
          v.at(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }

  eigenvalues.resize(n);
  for (std::size_t i = 0; i < n; ++i) eigenvalues[i] = a.at(i, i);
}

}  // namespace

CooccurrenceCounts count_cooccurrences(const std::vector<Sentence>& corpus, int window,
                                       const std::vector<std::string>& phrases,
                                       int min_count) {
  if (window < 1) throw std::invalid_argument("window must be >= 1");
  std::vector<TokenRow> rows = join_phrases(corpus, phrases);

  CooccurrenceCounts counts;
  std::unordered_map<std::string, std::int64_t> frequency;
  for (const TokenRow& row : rows)
    for (const std::string& token : row) ++frequency[token];

  std::unordered_map<std::string, int> index;
  for (const TokenRow& row : rows) {
    for (const std::string& token : row) {
      if (frequency[token] < min_count) continue;
      if (index.emplace(token, static_cast<int>(counts.vocab.size())).second)
        counts.vocab.push_back(token);
    }
  }

  for (const TokenRow& row : rows) {
    for (std::size_t p = 0; p < row.size(); ++p) {
      auto ip = index.find(row[p]);
      if (ip == index.end()) continue;
      for (std::size_t o = 1; o <= static_cast<std::size_t>(window) && p + o < row.size();
           ++o) {
        auto iq = index.find(row[p + o]);
        if (iq == index.end()) continue;
        int i = ip->second, j = iq->second;
        if (i == j) {
          counts.pair_counts[{i, i}] += 2;  // both orientations hit the diagonal
        } else {
          counts.pair_counts[{std::min(i, j), std::max(i, j)}] += 1;
        }
      }
    }
  }

  counts.token_counts.assign(counts.vocab.size(), 0);
  for (const auto& [key, value] : counts.pair_counts) {
    if (key.first == key.second) {
      counts.token_counts[static_cast<std::size_t>(key.first)] += value;
      counts.total += value;
    } else {
      counts.token_counts[static_cast<std::size_t>(key.first)] += value;
      counts.token_counts[static_cast<std::size_t>(key.second)] += value;
      counts.total += 2 * value;
    }
  }
  return counts;
}

PpmiVectors ppmi(const CooccurrenceCounts& counts) {
  if (counts.vocab.empty() || counts.total <= 0)
    throw std::invalid_argument("empty co-occurrence counts");

  PpmiVectors out;
  out.vocab = counts.vocab;
  out.rows.assign(counts.vocab.size(), {});
  for (const auto& [key, value] : counts.pair_counts) {
    const auto [i, j] = key;
    const std::int64_t ti = counts.token_counts[static_cast<std::size_t>(i)];
    const std::int64_t tj = counts.token_counts[static_cast<std::size_t>(j)];
    // positive only when total*pair strictly exceeds the independence product
    if (static_cast<__int128>(counts.total) * value <= static_cast<__int128>(ti) * tj)
      continue;
    double entry = std::log(static_cast<double>(counts.total) * static_cast<double>(value) /
                            (static_cast<double>(ti) * static_cast<double>(tj)));
    out.rows[static_cast<std::size_t>(i)].emplace_back(j, entry);
    if (i != j) out.rows[static_cast<std::size_t>(j)].emplace_back(i, entry);
  }
  for (auto& row : out.rows)
    std::sort(row.begin(), row.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

DenseMatrix reduce(const PpmiVectors& vectors, std::size_t dims, std::uint64_t seed) {
  const std::size_t n = vectors.vocab.size();
  if (dims < 1 || dims > n) throw std::invalid_argument("dims out of range");

  DenseMatrix m;
  m.rows = m.cols = n;
  m.values.assign(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (const auto& [j, value] : vectors.rows[i]) m.at(i, static_cast<std::size_t>(j)) = value;

  const std::size_t k = std::min(dims + 8, n);
  DenseMatrix sketch;
  sketch.rows = n;
  sketch.cols = k;
  sketch.values.resize(n * k);
  SplitMix64 rng(seed);
  for (double& v : sketch.values) v = gaussian(rng);

  DenseMatrix q = multiply(m, sketch);
  orthonormalize_columns(q);
  for (int power = 0; power < 2; ++power) {  // M is symmetric, so M^T Q = M Q
    q = multiply(m, q);
    orthonormalize_columns(q);
  }

  DenseMatrix b = multiply(transpose(q), m);  // k x n
  DenseMatrix gram = multiply(b, transpose(b));  // k x k

  std::vector<double> eigenvalues;
  DenseMatrix rot;
  jacobi_eigen(gram, eigenvalues, rot);

  std::vector<std::size_t> order(k);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return eigenvalues[a] > eigenvalues[b];
  });

  // embeddings = Q * U_d * S_d, with B = U S V^T and S = sqrt(eig(B B^T))
  DenseMatrix scaled;  // k x dims: columns u_i * sigma_i
  scaled.rows = k;
  scaled.cols = dims;
  scaled.values.assign(k * dims, 0.0);
  for (std::size_t c = 0; c < dims; ++c) {
    double sigma = std::sqrt(std::max(0.0, eigenvalues[order[c]]));
    for (std::size_t r = 0; r < k; ++r) scaled.at(r, c) = rot.at(r, order[c]) * sigma;
  }
  return multiply(q, scaled);
}

std::size_t write_embedding_kb(const std::vector<std::string>& vocab,
                               const DenseMatrix& rows, const std::filesystem::path& path) {
  if (vocab.size() != rows.rows || rows.cols == 0)
    throw std::invalid_argument("vocab and matrix shape mismatch");

  std::vector<std::size_t> kept;
  for (std::size_t r = 0; r < rows.rows; ++r) {
    double norm_sq = 0.0;
    for (std::size_t c = 0; c < rows.cols; ++c) norm_sq += rows.at(r, c) * rows.at(r, c);
    if (std::sqrt(norm_sq) >= 1e-12) kept.push_back(r);
  }
  if (kept.empty()) throw std::runtime_error("all embedding rows are zero");

  std::ostringstream out;
  out << kept.size() << ' ' << rows.cols << '\n';
  for (std::size_t r : kept) {
    std::string term = vocab[r];
    std::replace(term.begin(), term.end(), ' ', '_');
    out << term;
    for (std::size_t c = 0; c < rows.cols; ++c) out << ' ' << format_double(rows.at(r, c));
    out << '\n';
  }
  write_text_file(path, out.str());
  return rows.rows - kept.size();
}

std::size_t write_embedding_kb(const PpmiVectors& vectors, const std::filesystem::path& path) {
  DenseMatrix dense;
  dense.rows = vectors.vocab.size();
  dense.cols = vectors.vocab.size();
  dense.values.assign(dense.rows * dense.cols, 0.0);
  for (std::size_t i = 0; i < vectors.rows.size(); ++i)
    for (const auto& [j, value] : vectors.rows[i])
      dense.at(i, static_cast<std::size_t>(j)) = value;
  return write_embedding_kb(vectors.vocab, dense, path);
}

std::vector<std::string> load_phrases(const std::filesystem::path& path) {
  std::vector<std::string> out;
  for (std::string& line : split(read_text_file(path), '\n')) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    out.push_back(line);
  }
  return out;
}

}  // namespace semnet
