// main.cpp : semnet command line - design-description text to semantic network
//
// Subcommands mirror the pipeline stages (extract, build, layout, render,
// stats), plus `pipeline` to run them end to end and `forge` to train a small
// embedding KB from a plain-text corpus. Exit codes: 0 success, 2 usage error,
// 3 input/parse error, 4 empty result.

#include <algorithm>
#include <filesystem>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "semnet/extract.hpp"
#include "semnet/kb.hpp"
#include "semnet/kbforge.hpp"
#include "semnet/layout.hpp"
#include "semnet/network.hpp"
#include "semnet/render.hpp"
#include "semnet/util.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitInput = 3;
constexpr int kExitEmpty = 4;

struct CommonOptions {
  bool quiet = false;
};

void note(const CommonOptions& opts, const std::string& line) {
  if (!opts.quiet) std::cout << line << "\n";
}

semnet::KnowledgeBase load_kb(const std::string& path, const std::string& type) {
  if (type == "embedding") return semnet::load_embedding_kb(path);
  return semnet::load_taxonomy_kb(path);
}

semnet::StopwordSet resolve_stopwords(const std::string& path) {
  if (path.empty()) return semnet::default_stopwords();
  return semnet::load_stopwords(path);
}

semnet::LemmaMap resolve_lemmas(const std::string& path) {
  if (path.empty()) return {};
  return semnet::load_lemma_map(path);
}

std::string breakdown_summary(const semnet::TermSet& terms, int max_n) {
  static const char* names[] = {"unigrams", "bigrams", "trigrams"};
  std::vector<std::size_t> counts = semnet::ngram_breakdown(terms, max_n);
  std::ostringstream os;
  os << "N=" << terms.n_terms();
  for (std::size_t i = 0; i < counts.size(); ++i) {
    os << ' ';
    if (i < 3)
      os << names[i];
    else
      os << (i + 1) << "-grams";
    os << '=' << counts[i];
  }
  return os.str();
}

struct ExtractResult {
  semnet::KnowledgeBase kb;
  semnet::TermSet terms;
};

ExtractResult run_extract(const std::string& kb_path, const std::string& kb_type,
                          const std::string& text_path, const std::string& stopwords_path,
                          const std::string& lemmas_path, int max_n) {
  ExtractResult result{load_kb(kb_path, kb_type), {}};
  std::string text = semnet::read_text_file(text_path);
  auto sentences = semnet::tokenize(text);
  result.terms = semnet::retrieve_terms(sentences, result.kb, max_n,
                                        resolve_stopwords(stopwords_path),
                                        resolve_lemmas(lemmas_path));
  return result;
}

struct LayoutFlags {
  semnet::LayoutConfig config;
  bool seed_given = false;
};

void add_layout_flags(CLI::App* cmd, LayoutFlags& flags) {
  cmd->add_option("--iterations", flags.config.iterations, "layout iteration budget")
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--k-r", flags.config.k_r, "repulsion scaling");
  cmd->add_option("--k-g", flags.config.k_g, "gravity scaling");
  cmd->add_option("--delta", flags.config.delta, "edge weight influence exponent");
  cmd->add_option("--tolerance", flags.config.tolerance, "speed tolerance");
  cmd->add_option("--convergence-eps", flags.config.convergence_eps,
                  "early-stop displacement threshold (0 disables)");
}

const std::set<std::string> kFormats = {"json", "graphml", "dot", "svg"};

std::vector<std::string> parse_formats(const std::string& list) {
  std::vector<std::string> out;
  for (const std::string& f : semnet::split(list, ',')) {
    if (f.empty()) continue;
    if (kFormats.count(f) == 0)
      throw CLI::ValidationError("--format", "unknown format '" + f + "'");
    if (std::find(out.begin(), out.end(), f) == out.end()) out.push_back(f);
  }
  if (out.empty()) throw CLI::ValidationError("--format", "no formats requested");
  return out;
}

void render_one(const semnet::WeightedGraph& graph, const semnet::Layout* layout,
                const std::string& format, const std::filesystem::path& path,
                const CommonOptions& opts) {
  std::string content;
  if (format == "json") {
    content = semnet::to_json(graph, layout);
  } else if (format == "graphml") {
    content = semnet::to_graphml(graph, layout);
  } else if (format == "dot") {
    content = semnet::to_dot(graph);
  } else {
    if (layout == nullptr)
      throw semnet::ParseError(path.string(), 0, "svg output needs node positions");
    content = semnet::to_svg(graph, *layout);
  }
  semnet::write_text_file(path, content);
  note(opts, "wrote " + path.string());
}

// ---- subcommand bodies ----------------------------------------------------

int cmd_extract(const std::string& kb_path, const std::string& kb_type,
                const std::string& text_path, const std::string& stopwords_path,
                const std::string& lemmas_path, int max_n, const std::string& out_path,
                const CommonOptions& opts) {
  semnet::TermSet terms =
      run_extract(kb_path, kb_type, text_path, stopwords_path, lemmas_path, max_n).terms;
  if (terms.n_terms() == 0) {
    std::cerr << "error: no lexicon terms found in " << text_path << "\n";
    return kExitEmpty;
  }
  semnet::write_text_file(out_path, semnet::termset_to_json(terms));
  note(opts, breakdown_summary(terms, max_n));
  note(opts, "wrote " + out_path);
  return kExitOk;
}

int cmd_build(const std::string& input, const std::string& kb_path,
              const std::string& kb_type, double multiplier, std::uint64_t seed,
              const std::string& out_path, const CommonOptions& opts) {
  semnet::KnowledgeBase kb = load_kb(kb_path, kb_type);
  semnet::TermSet terms = semnet::termset_from_json(semnet::read_text_file(input), input);
  if (terms.n_terms() == 0) {
    std::cerr << "error: term set is empty\n";
    return kExitEmpty;
  }
  semnet::SimilarityMatrix matrix = semnet::build_similarity_matrix(terms, kb);
  semnet::WeightedGraph graph = semnet::backbone(matrix, {multiplier});
  graph.meta.seed = seed;
  semnet::write_text_file(out_path, semnet::to_json(graph));
  semnet::GraphStats stats = semnet::graph_stats(graph);
  std::ostringstream os;
  os << "graph: nodes=" << stats.nodes << " edges=" << stats.edges
     << " components=" << stats.components;
  note(opts, os.str());
  note(opts, "wrote " + out_path);
  return kExitOk;
}

int cmd_layout(const std::string& input, const LayoutFlags& flags,
               const std::string& out_path, const CommonOptions& opts) {
  semnet::ParsedGraph parsed = semnet::graph_from_json(semnet::read_text_file(input), input);
  semnet::LayoutConfig config = flags.config;
  if (!flags.seed_given) config.seed = parsed.graph.meta.seed;
  parsed.graph.meta.seed = config.seed;
  semnet::Layout layout = semnet::layout_graph(parsed.graph, config);
  semnet::write_text_file(out_path, semnet::to_json(parsed.graph, &layout));
  std::ostringstream os;
  os << "layout: iterations=" << layout.iterations_run
     << (layout.converged ? " (converged)" : " (iteration cap)");
  note(opts, os.str());
  note(opts, "wrote " + out_path);
  return kExitOk;
}

int cmd_render(const std::string& input, const std::string& format_list,
               const std::string& out_path, const std::string& out_prefix,
               const CommonOptions& opts) {
  std::vector<std::string> formats = parse_formats(format_list);
  if (!out_path.empty() && formats.size() != 1)
    throw CLI::ValidationError("--out", "use --out-prefix with multiple formats");
  if (out_path.empty() && out_prefix.empty())
    throw CLI::ValidationError("--out", "an output path or prefix is required");

  semnet::ParsedGraph parsed = semnet::graph_from_json(semnet::read_text_file(input), input);
  const semnet::Layout* layout = parsed.layout ? &*parsed.layout : nullptr;
  for (const std::string& format : formats) {
    std::filesystem::path path =
        out_path.empty() ? std::filesystem::path(out_prefix + "." + format)
                         : std::filesystem::path(out_path);
    render_one(parsed.graph, layout, format, path, opts);
  }
  return kExitOk;
}

int cmd_stats(const std::string& input, const std::string& out_path,
              const CommonOptions& opts) {
  semnet::ParsedGraph parsed = semnet::graph_from_json(semnet::read_text_file(input), input);
  semnet::GraphStats stats = semnet::graph_stats(parsed.graph);
  std::ostringstream os;
  os << "nodes=" << stats.nodes << "\nedges=" << stats.edges
     << "\ndensity=" << semnet::format_double(stats.density)
     << "\ncomponents=" << stats.components
     << "\nweight_min=" << semnet::format_double(stats.min_weight)
     << "\nweight_mean=" << semnet::format_double(stats.mean_weight)
     << "\nweight_max=" << semnet::format_double(stats.max_weight) << "\ndegrees=";
  for (std::size_t d = 0; d < stats.degree_histogram.size(); ++d) {
    if (stats.degree_histogram[d] == 0) continue;
    os << d << ":" << stats.degree_histogram[d] << " ";
  }
  std::string text = os.str();
  if (!text.empty() && text.back() == ' ') text.pop_back();
  std::cout << text << "\n";
  if (!out_path.empty()) {
    semnet::write_text_file(out_path, text + "\n");
    note(opts, "wrote " + out_path);
  }
  return kExitOk;
}

int cmd_pipeline(const std::string& kb_path, const std::string& kb_type,
                 const std::string& text_path, const std::string& stopwords_path,
                 const std::string& lemmas_path, int max_n, double multiplier,
                 std::uint64_t seed, const LayoutFlags& layout_flags,
                 const std::string& prefix, const std::string& format_list,
                 const CommonOptions& opts) {
  std::vector<std::string> formats = parse_formats(format_list);
  std::string stage = "extract";
  try {
    ExtractResult extracted =
        run_extract(kb_path, kb_type, text_path, stopwords_path, lemmas_path, max_n);
    const semnet::TermSet& terms = extracted.terms;
    if (terms.n_terms() == 0) {
      std::cerr << "error: pipeline stage 'extract': no lexicon terms found\n";
      return kExitEmpty;
    }
    semnet::write_text_file(prefix + ".terms.json", semnet::termset_to_json(terms));
    note(opts, breakdown_summary(terms, max_n));

    stage = "build";
    semnet::SimilarityMatrix matrix = semnet::build_similarity_matrix(terms, extracted.kb);
    semnet::WeightedGraph graph = semnet::backbone(matrix, {multiplier});
    graph.meta.seed = seed;
    semnet::write_text_file(prefix + ".graph.json", semnet::to_json(graph));

    stage = "layout";
    semnet::LayoutConfig config = layout_flags.config;
    config.seed = seed;
    semnet::Layout layout = semnet::layout_graph(graph, config);
    semnet::write_text_file(prefix + ".layout.json", semnet::to_json(graph, &layout));

    stage = "render";
    for (const std::string& format : formats)
      render_one(graph, &layout, format, prefix + "." + format, opts);

    semnet::GraphStats stats = semnet::graph_stats(graph);
    std::ostringstream os;
    os << "pipeline: nodes=" << stats.nodes << " edges=" << stats.edges
       << " components=" << stats.components << " iterations=" << layout.iterations_run;
    note(opts, os.str());
    return kExitOk;
  } catch (const semnet::ParseError& e) {
    std::cerr << "error: pipeline stage '" << stage << "': " << e.what() << "\n";
    return kExitInput;
  } catch (const semnet::TermNotFoundError& e) {
    std::cerr << "error: pipeline stage '" << stage << "': " << e.what() << "\n";
    return kExitInput;
  }
}

int cmd_forge(const std::vector<std::string>& corpus_paths, int window, std::size_t dims,
              int min_count, const std::string& phrases_path, std::uint64_t seed,
              const std::string& out_path, const CommonOptions& opts) {
  std::vector<semnet::Sentence> sentences;
  for (const std::string& path : corpus_paths) {
    std::string text = semnet::read_text_file(path);
    for (auto& sentence : semnet::tokenize(text)) sentences.push_back(std::move(sentence));
  }
  std::vector<std::string> phrases;
  if (!phrases_path.empty()) phrases = semnet::load_phrases(phrases_path);

  semnet::CooccurrenceCounts counts =
      semnet::count_cooccurrences(sentences, window, phrases, min_count);
  if (counts.vocab.empty() || counts.total == 0) {
    std::cerr << "error: corpus produced an empty vocabulary\n";
    return kExitEmpty;
  }
  semnet::PpmiVectors vectors = semnet::ppmi(counts);

  std::size_t dropped = 0;
  if (dims == 0) {
    dropped = semnet::write_embedding_kb(vectors, out_path);
  } else {
    std::size_t effective = std::min(dims, counts.vocab.size());
    semnet::DenseMatrix reduced = semnet::reduce(vectors, effective, seed);
    dropped = semnet::write_embedding_kb(counts.vocab, reduced, out_path);
  }
  std::ostringstream os;
  os << "vocabulary: " << counts.vocab.size() << " terms";
  if (dropped > 0) os << " (" << dropped << " zero rows dropped)";
  note(opts, os.str());
  note(opts, "wrote " + out_path);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"semnet: semantic network generation from design descriptions"};
  app.set_version_flag("--version", semnet::kVersion);
  app.require_subcommand(1);

  CommonOptions opts;
  app.add_flag("--quiet", opts.quiet, "suppress progress output");

  // shared option storage
  std::string kb_path, kb_type, text_path, stopwords_path, lemmas_path;
  std::string input, out_path, out_prefix, format_list = "json", phrases_path;
  int max_n = 3, window = 4, min_count = 1;
  std::size_t dims = 64;
  double multiplier = 2.0;
  std::uint64_t seed = 42;
  LayoutFlags layout_flags;
  std::vector<std::string> corpus_paths;

  auto add_kb_options = [&](CLI::App* cmd) {
    cmd->add_option("--kb", kb_path, "knowledge base file")->required();
    cmd->add_option("--kb-type", kb_type, "knowledge base backend")
        ->required()
        ->check(CLI::IsMember({"embedding", "taxonomy"}));
  };
  auto add_text_options = [&](CLI::App* cmd) {
    cmd->add_option("--text", text_path, "design description text file")->required();
    cmd->add_option("--stopwords", stopwords_path, "stopword file (default: built-in list)");
    cmd->add_option("--lemmas", lemmas_path, "tab-separated surface-to-lemma map");
    cmd->add_option("--max-n", max_n, "longest n-gram window")->check(CLI::PositiveNumber);
  };

  CLI::App* extract = app.add_subcommand("extract", "retrieve lexicon terms from a text");
  add_kb_options(extract);
  add_text_options(extract);
  extract->add_option("--out", out_path, "term set JSON output")->required();

  CLI::App* build = app.add_subcommand("build", "similarity matrix and backbone graph");
  build->add_option("input", input, "term set JSON from extract")->required();
  add_kb_options(build);
  build->add_option("--multiplier", multiplier, "target edge count multiplier");
  build->add_option("--seed", seed, "seed recorded for downstream stages");
  build->add_option("--out", out_path, "graph JSON output")->required();

  CLI::App* layout = app.add_subcommand("layout", "force-directed node positions");
  layout->add_option("input", input, "graph JSON from build")->required();
  layout_flags.seed_given = false;
  layout->add_option("--seed", seed, "layout seed (default: seed stored in the graph)");
  add_layout_flags(layout, layout_flags);
  layout->add_option("--out", out_path, "layout JSON output")->required();

  CLI::App* render = app.add_subcommand("render", "serialize a laid-out graph");
  render->add_option("input", input, "graph or layout JSON")->required();
  render->add_option("--format", format_list, "comma list of json,graphml,dot,svg");
  render->add_option("--out", out_path, "output file (single format)");
  render->add_option("--out-prefix", out_prefix, "output prefix (multiple formats)");

  CLI::App* stats = app.add_subcommand("stats", "summary statistics of a graph file");
  stats->add_option("input", input, "graph JSON")->required();
  stats->add_option("--out", out_path, "also write the summary to a file");

  CLI::App* pipeline = app.add_subcommand("pipeline", "extract, build, layout and render");
  add_kb_options(pipeline);
  add_text_options(pipeline);
  pipeline->add_option("--multiplier", multiplier, "target edge count multiplier");
  pipeline->add_option("--seed", seed, "seed for layout and metadata");
  add_layout_flags(pipeline, layout_flags);
  pipeline->add_option("--out-prefix", out_prefix, "prefix for all output files")->required();
  pipeline->add_option("--format", format_list, "comma list of json,graphml,dot,svg");

  CLI::App* forge = app.add_subcommand("forge", "train an embedding KB from a corpus");
  forge->add_option("corpus", corpus_paths, "plain text corpus file(s)")->required();
  forge->add_option("--window", window, "co-occurrence window width")
      ->check(CLI::PositiveNumber);
  forge->add_option("--dims", dims, "embedding dimension (0 keeps raw PPMI rows)");
  forge->add_option("--min-count", min_count, "minimum token frequency")
      ->check(CLI::PositiveNumber);
  forge->add_option("--phrases", phrases_path, "multiword phrases to join, one per line");
  forge->add_option("--seed", seed, "projection seed");
  forge->add_option("--out", out_path, "embedding KB output file")->required();

  for (CLI::App* sub : app.get_subcommands([](const CLI::App*) { return true; }))
    sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }
  layout_flags.seed_given = layout->count("--seed") > 0;

  try {
    if (*extract)
      return cmd_extract(kb_path, kb_type, text_path, stopwords_path, lemmas_path, max_n,
                         out_path, opts);
    if (*build)
      return cmd_build(input, kb_path, kb_type, multiplier, seed, out_path, opts);
    if (*layout) {
      layout_flags.config.seed = seed;
      return cmd_layout(input, layout_flags, out_path, opts);
    }
    if (*render) return cmd_render(input, format_list, out_path, out_prefix, opts);
    if (*stats) return cmd_stats(input, out_path, opts);
    if (*pipeline)
      return cmd_pipeline(kb_path, kb_type, text_path, stopwords_path, lemmas_path, max_n,
                          multiplier, seed, layout_flags, out_prefix, format_list, opts);
    if (*forge)
      return cmd_forge(corpus_paths, window, dims, min_count, phrases_path, seed, out_path,
                       opts);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const semnet::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const semnet::TermNotFoundError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitUsage;
}
