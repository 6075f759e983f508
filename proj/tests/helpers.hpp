// helpers.hpp : shared test utilities - temp dirs, graph generators,
// spanning-tree enumeration, taxonomy oracle, and a strict XML scanner
#pragma once

#include <cctype>
#include <cstdint>
#include <filesystem>
#include <map>
#include <random>
#include <string>
#include <vector>
#include <unistd.h>

#include "semnet/kb.hpp"
#include "semnet/network.hpp"
#include "semnet/util.hpp"

#ifndef SEMNET_FIXTURE_DIR
#define SEMNET_FIXTURE_DIR "fixtures"
#endif

namespace testutil {

inline std::filesystem::path fixture(const std::string& name) {
  return std::filesystem::path(SEMNET_FIXTURE_DIR) / name;
}

struct TempDir {
  std::filesystem::path path;

  TempDir() {
    static std::uint64_t counter = 0;
    path = std::filesystem::temp_directory_path() /
           ("semnet_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    std::filesystem::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path, ec);
  }
  std::filesystem::path file(const std::string& name) const { return path / name; }
};

// Random symmetric matrix with weights on a 1/1024 grid, so any sum of a few
// entries is exact in binary and tree totals compare with ==.
inline semnet::SimilarityMatrix random_matrix(std::size_t n, std::uint64_t seed) {
  semnet::SimilarityMatrix m;
  m.n = n;
  m.kb_name = "random";
  m.weights.assign(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) m.labels.push_back("t" + std::to_string(i));
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> grid(0, 1024);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      m.set(i, j, static_cast<double>(grid(rng)) / 1024.0);
  return m;
}

// Decodes a Pruefer sequence into the edge list of the labeled tree it names.
inline std::vector<std::pair<int, int>> prufer_decode(const std::vector<int>& seq, int n) {
  std::vector<int> degree(static_cast<std::size_t>(n), 1);
  for (int s : seq) ++degree[static_cast<std::size_t>(s)];
  std::vector<std::pair<int, int>> edges;
  for (int s : seq) {
    for (int leaf = 0; leaf < n; ++leaf) {
      if (degree[static_cast<std::size_t>(leaf)] == 1) {
        edges.push_back({leaf, s});
        --degree[static_cast<std::size_t>(leaf)];
        --degree[static_cast<std::size_t>(s)];
        break;
      }
    }
  }
  int first = -1;
  for (int i = 0; i < n; ++i) {
    if (degree[static_cast<std::size_t>(i)] == 1) {
      if (first < 0) {
        first = i;
      } else {
        edges.push_back({first, i});
        break;
      }
    }
  }
  return edges;
}

// Exhaustive maximum over all n^(n-2) labeled spanning trees.
inline double brute_force_max_tree_weight(const semnet::SimilarityMatrix& m) {
  const int n = static_cast<int>(m.n);
  if (n <= 1) return 0.0;
  if (n == 2) return m.at(0, 1);
  std::vector<int> seq(static_cast<std::size_t>(n - 2), 0);
  double best = -1.0;
  while (true) {
    double total = 0.0;
    for (auto [a, b] : prufer_decode(seq, n))
      total += m.at(static_cast<std::size_t>(a), static_cast<std::size_t>(b));
    best = std::max(best, total);
    int pos = n - 3;
    while (pos >= 0 && seq[static_cast<std::size_t>(pos)] == n - 1) {
      seq[static_cast<std::size_t>(pos)] = 0;
      --pos;
    }
    if (pos < 0) break;
    ++seq[static_cast<std::size_t>(pos)];
  }
  return best;
}

struct RandomTaxonomy {
  std::string file_content;
  std::vector<std::vector<std::string>> lemmas;      // per synset
  std::vector<std::pair<int, int>> edges;
  std::size_t n_synsets = 0;
};

// Small random taxonomy: a forest-ish DAG over <= max_synsets synsets with a
// shared lemma pool, occasionally polysemous, sometimes disconnected.
inline RandomTaxonomy random_taxonomy(std::uint64_t seed, int max_synsets = 20) {
  std::mt19937_64 rng(seed);
  RandomTaxonomy tax;
  const int n = 2 + static_cast<int>(rng() % static_cast<std::uint64_t>(max_synsets - 1));
  tax.n_synsets = static_cast<std::size_t>(n);
  static const char* pool[] = {"rotor",  "stator", "gear",   "shaft", "frame",
                               "sensor", "wheel",  "hinge",  "valve", "pump",
                               "lever",  "spring", "clutch", "cam",   "brake"};
  std::string content;
  for (int i = 0; i < n; ++i) {
    std::vector<std::string> lemma_list;
    lemma_list.push_back(std::string(pool[rng() % 15]) + "_" + std::to_string(i));
    if (rng() % 3 == 0) lemma_list.push_back(pool[rng() % 15]);  // polysemy source
    tax.lemmas.push_back(lemma_list);
    content += "S\ts" + std::to_string(i) + "\t" + semnet::join(lemma_list, '|') + "\n";
  }
  for (int child = 1; child < n; ++child) {
    if (rng() % 4 == 0) continue;  // leave some components detached
    int parent = static_cast<int>(rng() % static_cast<std::uint64_t>(child));
    tax.edges.push_back({parent, child});
    content += "E\ts" + std::to_string(parent) + "\ts" + std::to_string(child) + "\n";
  }
  tax.file_content = content;
  return tax;
}

// Floyd-Warshall word similarity over a taxonomy: max over synset pairs of
// 1/(1+dist), 0 when nothing connects. Independent of the BFS in the library.
inline double taxonomy_similarity_oracle(const RandomTaxonomy& tax, const std::string& a,
                                         const std::string& b) {
  const std::size_t n = tax.n_synsets;
  const int inf = 1 << 20;
  std::vector<std::vector<int>> dist(n, std::vector<int>(n, inf));
  for (std::size_t i = 0; i < n; ++i) dist[i][i] = 0;
  for (auto [p, c] : tax.edges) {
    dist[static_cast<std::size_t>(p)][static_cast<std::size_t>(c)] = 1;
    dist[static_cast<std::size_t>(c)][static_cast<std::size_t>(p)] = 1;
  }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (dist[i][k] + dist[k][j] < dist[i][j]) dist[i][j] = dist[i][k] + dist[k][j];

  double best = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      bool has_a = false, has_b = false;
      for (const std::string& l : tax.lemmas[i]) has_a |= (l == a);
      for (const std::string& l : tax.lemmas[j]) has_b |= (l == b);
      if (has_a && has_b && dist[i][j] < inf)
        best = std::max(best, 1.0 / (1.0 + dist[i][j]));
    }
  }
  return best;
}

// Random backbone-style graph for layout and renderer tests.
inline semnet::WeightedGraph random_graph(std::size_t n, std::uint64_t seed,
                                          double multiplier = 2.0) {
  semnet::SimilarityMatrix m = random_matrix(n, seed);
  if (n == 0) {
    semnet::WeightedGraph g;
    g.meta.kb_name = "random";
    return g;
  }
  return semnet::backbone(m, {multiplier});
}

// ---- strict-enough XML well-formedness scanner -----------------------------

struct XmlScan {
  bool ok = false;
  std::string error;
  std::map<std::string, int> element_counts;
};

// Checks tag balance, attribute quoting and entity validity; counts elements.
inline XmlScan scan_xml(const std::string& text) {
  XmlScan result;
  std::vector<std::string> stack;
  std::size_t i = 0;
  const std::size_t size = text.size();
  int roots = 0;

  auto fail = [&](const std::string& why) {
    result.error = why + " at byte " + std::to_string(i);
    return result;
  };
  auto check_entity = [&](std::size_t pos) {
    std::size_t semi = text.find(';', pos);
    if (semi == std::string::npos || semi - pos > 10) return false;
    std::string entity = text.substr(pos + 1, semi - pos - 1);
    if (entity == "amp" || entity == "lt" || entity == "gt" || entity == "quot" ||
        entity == "apos")
      return true;
    if (entity.size() >= 2 && entity[0] == '#') return true;
    return false;
  };

  while (i < size) {
    char c = text[i];
    if (c == '<') {
      if (text.compare(i, 4, "<!--") == 0) {
        std::size_t end = text.find("-->", i + 4);
        if (end == std::string::npos) return fail("unterminated comment");
        i = end + 3;
        continue;
      }
      if (text.compare(i, 2, "<?") == 0) {
        std::size_t end = text.find("?>", i);
        if (end == std::string::npos) return fail("unterminated declaration");
        i = end + 2;
        continue;
      }
      bool closing = i + 1 < size && text[i + 1] == '/';
      std::size_t name_start = i + (closing ? 2 : 1);
      std::size_t j = name_start;
      while (j < size && (std::isalnum(static_cast<unsigned char>(text[j])) ||
                          text[j] == '_' || text[j] == '-' || text[j] == ':'))
        ++j;
      if (j == name_start) return fail("missing element name");
      std::string name = text.substr(name_start, j - name_start);

      // attributes until '>' with quote tracking
      bool self_closing = false;
      while (j < size && text[j] != '>') {
        if (text[j] == '"') {
          std::size_t q = j + 1;
          while (q < size && text[q] != '"') {
            if (text[q] == '<') return fail("raw '<' in attribute");
            if (text[q] == '&' && !check_entity(q)) return fail("bad entity in attribute");
            ++q;
          }
          if (q >= size) return fail("unterminated attribute value");
          j = q + 1;
          continue;
        }
        if (text[j] == '/' && j + 1 < size && text[j + 1] == '>') {
          self_closing = true;
          j += 1;
          break;
        }
        ++j;
      }
      if (j >= size) return fail("unterminated tag");

      if (closing) {
        if (self_closing) return fail("closing tag with '/>'");
        if (stack.empty() || stack.back() != name)
          return fail("mismatched closing tag '" + name + "'");
        stack.pop_back();
      } else {
        ++result.element_counts[name];
        if (stack.empty()) {
          ++roots;
          if (roots > 1) return fail("multiple root elements");
        }
        if (!self_closing) stack.push_back(name);
      }
      i = j + 1;
      continue;
    }
    if (c == '&') {
      if (!check_entity(i)) return fail("bad entity");
      i = text.find(';', i) + 1;
      continue;
    }
    if (c == '>') return fail("raw '>' outside tag");
    if (!stack.empty() || std::isspace(static_cast<unsigned char>(c)) != 0) {
      ++i;
      continue;
    }
    return fail("text content outside the root element");
  }
  if (!stack.empty()) {
    result.error = "unclosed element '" + stack.back() + "'";
    return result;
  }
  if (roots != 1) {
    result.error = "expected exactly one root element";
    return result;
  }
  result.ok = true;
  return result;
}

}  // namespace testutil
