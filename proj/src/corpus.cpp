#include "agt/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace agt {

int LabeledTree::node_count() const {
  int n = 1;
  for (const LabeledTree& c : children) n += c.node_count();
  return n;
}

int LabeledTree::leaf_count() const {
  if (is_leaf()) return 1;
  int n = 0;
  for (const LabeledTree& c : children) n += c.leaf_count();
  return n;
}

void LabeledTree::collect_tokens(std::vector<std::string>& out) const {
  if (is_leaf()) {
    out.push_back(token);
    return;
  }
  for (const LabeledTree& c : children) c.collect_tokens(out);
}

std::vector<std::string> LabeledTree::tokens() const {
  std::vector<std::string> out;
  collect_tokens(out);
  return out;
}

namespace {

struct Parser {
  std::string_view text;
  std::size_t pos = 0;

  [[noreturn]] void fail(const std::string& msg) const { throw TreebankParseError(msg, pos); }

  bool done() const { return pos >= text.size(); }
  char peek() const { return text[pos]; }

  void skip_spaces() {
    while (!done() && peek() == ' ') ++pos;
  }

  void expect(char c) {
    if (done()) fail(std::string("expected '") + c + "' but hit end of input");
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos;
  }

  LabeledTree parse_tree() {
    skip_spaces();
    expect('(');
    LabeledTree node;
    node.label = parse_label();
    skip_spaces();
    if (done()) fail("unterminated node");
    if (peek() == '(') {
      while (!done() && peek() == '(') {
        node.children.push_back(parse_tree());
        skip_spaces();
      }
    } else if (peek() != ')') {
      node.token = parse_token();
    } else {
      fail("empty node: expected a token or children");
    }
    skip_spaces();
    expect(')');
    return node;
  }

  int parse_label() {
    skip_spaces();
    std::size_t start = pos;
    while (!done() && peek() != ' ' && peek() != '(' && peek() != ')') ++pos;
    std::string_view raw = text.substr(start, pos - start);
    if (raw.empty()) fail("missing label");
    int value = 0;
    for (char c : raw) {
      if (!std::isdigit(static_cast<unsigned char>(c))) {
        pos = start;
        fail("label '" + std::string(raw) + "' is not an integer");
      }
      value = value * 10 + (c - '0');
    }
    if (value > 4) {
      pos = start;
      fail("label " + std::to_string(value) + " outside 0..4");
    }
    return value;
  }

  std::string parse_token() {
    std::size_t start = pos;
    while (!done() && peek() != ' ' && peek() != '(' && peek() != ')') ++pos;
    return std::string(text.substr(start, pos - start));
  }
};

}  // namespace

LabeledTree parse_treebank_line(std::string_view line) {
  Parser p{line};
  LabeledTree tree = p.parse_tree();
  p.skip_spaces();
  if (!p.done()) p.fail("trailing characters after tree");
  return tree;
}

namespace {

void render(const LabeledTree& node, std::string& out) {
  out += '(';
  out += std::to_string(node.label);
  if (node.is_leaf()) {
    out += ' ';
    out += node.token;
  } else {
    for (const LabeledTree& c : node.children) {
      out += ' ';
      render(c, out);
    }
  }
  out += ')';
}

}  // namespace

std::string render_treebank_line(const LabeledTree& tree) {
  std::string out;
  render(tree, out);
  return out;
}

std::vector<LabeledTree> load_treebank_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open treebank file: " + path);
  std::vector<LabeledTree> trees;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    try {
      trees.push_back(parse_treebank_line(line));
    } catch (const TreebankParseError& e) {
      throw std::runtime_error(path + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
  return trees;
}

void save_treebank_file(const std::string& path, std::span<const LabeledTree> trees) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write treebank file: " + path);
  for (const LabeledTree& t : trees) out << render_treebank_line(t) << '\n';
}

// --- Vocabulary ---

Vocabulary::Vocabulary() { add("<unk>"); }

Vocabulary::Vocabulary(std::vector<std::string> words) {
  if (words.empty()) throw std::invalid_argument("vocabulary: empty word list");
  for (std::size_t i = 0; i < words.size(); ++i) ids_[words[i]] = static_cast<int>(i);
  words_ = std::move(words);
}

int Vocabulary::add(const std::string& word) {
  auto it = ids_.find(word);
  if (it != ids_.end()) return it->second;
  const int id = static_cast<int>(words_.size());
  ids_[word] = id;
  words_.push_back(word);
  return id;
}

int Vocabulary::lookup(const std::string& token) const {
  auto it = ids_.find(lowercase_ascii(token));
  if (it != ids_.end()) return it->second;
  it = ids_.find(token);
  if (it != ids_.end()) return it->second;
  return unknown_id();
}

bool Vocabulary::contains(const std::string& word) const { return ids_.count(word) > 0; }

std::string Vocabulary::lowercase_ascii(std::string_view token) {
  std::string out(token);
  for (char& c : out)
    c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

// --- training units ---

namespace {

TrainingUnit unit_for_node(const LabeledTree& node, Vocabulary& vocab, bool grow_vocab,
                           bool full_sentence) {
  TrainingUnit unit;
  unit.label = node.label;
  unit.is_full_sentence = full_sentence;
  for (const std::string& token : node.tokens()) {
    const std::string folded = Vocabulary::lowercase_ascii(token);
    unit.tokens.push_back(grow_vocab ? vocab.add(folded) : vocab.lookup(token));
  }
  return unit;
}

void walk_units(const LabeledTree& node, const LabeledTree* root, Vocabulary& vocab,
                bool grow_vocab, std::vector<TrainingUnit>& out) {
  out.push_back(unit_for_node(node, vocab, grow_vocab, &node == root));
  for (const LabeledTree& c : node.children) walk_units(c, root, vocab, grow_vocab, out);
}

}  // namespace

std::vector<TrainingUnit> extract_training_units(const LabeledTree& tree, UnitMode mode,
                                                 Vocabulary& vocab, bool grow_vocab) {
  std::vector<TrainingUnit> units;
  if (mode == UnitMode::kSentencesOnly) {
    units.push_back(unit_for_node(tree, vocab, grow_vocab, true));
  } else {
    walk_units(tree, &tree, vocab, grow_vocab, units);
  }
  return units;
}

// --- embeddings ---

EmbeddingLoadResult load_embeddings(const std::string& path, const Vocabulary& vocab,
                                    std::uint64_t seed) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open embedding file: " + path);

  EmbeddingLoadResult result;
  std::vector<std::uint8_t> filled(static_cast<std::size_t>(vocab.size()), 0);
  std::vector<std::vector<double>> staged(static_cast<std::size_t>(vocab.size()));

  std::string line;
  std::size_t line_no = 0;
  int dim = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream fields(line);
    std::string word;
    fields >> word;
    std::vector<double> vec;
    std::string field;
    while (fields >> field) {
      std::size_t used = 0;
      double v = 0.0;
      try {
        v = std::stod(field, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != field.size())
        throw std::runtime_error("embedding file line " + std::to_string(line_no) +
                                 ": cannot parse float '" + field + "'");
      vec.push_back(v);
    }
    if (vec.empty())
      throw std::runtime_error("embedding file line " + std::to_string(line_no) +
                               ": no vector values");
    if (dim == 0) dim = static_cast<int>(vec.size());
    if (static_cast<int>(vec.size()) != dim)
      throw std::runtime_error("embedding file line " + std::to_string(line_no) + ": expected " +
                               std::to_string(dim) + " values, got " +
                               std::to_string(vec.size()));
    if (!vocab.contains(word)) continue;
    const int id = vocab.lookup(word);
    if (!filled[id]) {
      filled[id] = 1;
      staged[id] = std::move(vec);
      ++result.covered;
    }
  }
  if (dim == 0) throw std::runtime_error("embedding file is empty: " + path);

  EmbeddingTable& table = result.table;
  table.dim = dim;
  table.rows.assign(static_cast<std::size_t>(vocab.size()) * dim, 0.0);
  table.pretrained = filled;
  Rng rng(Rng::mix(seed, 0x0eedbed5));
  for (int id = 0; id < vocab.size(); ++id) {
    double* row = table.rows.data() + static_cast<std::size_t>(id) * dim;
    if (filled[id]) {
      std::copy(staged[id].begin(), staged[id].end(), row);
    } else {
      for (int j = 0; j < dim; ++j) row[j] = rng.uniform(-0.05, 0.05);
    }
  }
  return result;
}

EmbeddingTable random_embeddings(int vocab_size, int dim, std::uint64_t seed) {
  EmbeddingTable table;
  table.dim = dim;
  table.rows.resize(static_cast<std::size_t>(vocab_size) * dim);
  table.pretrained.assign(static_cast<std::size_t>(vocab_size), 0);
  Rng rng(Rng::mix(seed, 0x0eedbed5));
  for (double& v : table.rows) v = rng.uniform(-0.05, 0.05);
  return table;
}

// --- batching ---

Batch encode_batch(std::span<const TrainingUnit> units, const EmbeddingTable& embeddings) {
  if (units.empty()) throw std::invalid_argument("encode_batch: empty batch");
  Batch batch;
  batch.size = static_cast<int>(units.size());
  for (const TrainingUnit& u : units)
    batch.max_len = std::max(batch.max_len, static_cast<int>(u.tokens.size()));
  const int n = batch.max_len, d = embeddings.dim;

  std::vector<double> values(static_cast<std::size_t>(batch.size) * n * d, 0.0);
  batch.mask.assign(static_cast<std::size_t>(batch.size) * n, 0);
  for (int i = 0; i < batch.size; ++i) {
    const TrainingUnit& u = units[i];
    batch.labels.push_back(u.label);
    batch.lengths.push_back(static_cast<int>(u.tokens.size()));
    for (std::size_t t = 0; t < u.tokens.size(); ++t) {
      batch.mask[static_cast<std::size_t>(i) * n + t] = 1;
      auto row = embeddings.row(u.tokens[t]);
      std::copy(row.begin(), row.end(),
                values.data() + (static_cast<std::size_t>(i) * n + t) * d);
    }
  }
  batch.input = Tensor::from({batch.size, n, d}, std::move(values));
  return batch;
}

// --- synthetic negation grammar ---

int synthetic_label(bool negated, bool intensified, bool positive) {
  int label = positive ? (intensified ? 4 : 3) : (intensified ? 0 : 1);
  if (negated) label = 4 - label;
  return label;
}

namespace {

const char* kNouns[] = {"movie",  "film",   "book",     "show",     "play",
                        "story",  "plot",   "script",   "cast",     "scene",
                        "ending", "acting", "dialogue", "sequel",   "remake",
                        "comedy", "drama",  "thriller", "musical",  "documentary"};
constexpr int kNounCount = 20;

LabeledTree flat_sentence(const std::vector<std::string>& tokens, int label) {
  LabeledTree root;
  root.label = label;
  for (const std::string& t : tokens) {
    LabeledTree leaf;
    leaf.label = 2;  // filler tokens carry the neutral label
    leaf.token = t;
    root.children.push_back(std::move(leaf));
  }
  return root;
}

std::vector<LabeledTree> build_split(int count, std::span<const std::string> nouns, Rng& rng) {
  std::vector<LabeledTree> trees;
  trees.reserve(count);
  for (int i = 0; i < count; ++i) {
    const int combo = i % 8;  // cycle templates so classes stay balanced
    const bool negated = combo & 1;
    const bool intensified = combo & 2;
    const bool positive = combo & 4;
    std::vector<std::string> tokens = {"the", nouns[rng.uniform_int(static_cast<int>(nouns.size()))],
                                       "was"};
    if (negated) tokens.push_back("not");
    if (intensified) tokens.push_back("very");
    tokens.push_back(positive ? "good" : "bad");
    trees.push_back(flat_sentence(tokens, synthetic_label(negated, intensified, positive)));
  }
  return trees;
}

}  // namespace

SyntheticCorpus generate_synthetic_corpus(int size, std::uint64_t seed) {
  if (size < 10) throw std::invalid_argument("generate_synthetic_corpus: size must be >= 10");
  Rng rng(Rng::mix(seed, 0x5e27c0a9));

  std::vector<std::string> nouns(kNouns, kNouns + kNounCount);
  rng.shuffle(nouns);
  const int heldout_nouns = kNounCount / 5;
  std::vector<std::string> train_nouns(nouns.begin(), nouns.end() - heldout_nouns);
  std::vector<std::string> test_nouns(nouns.end() - heldout_nouns, nouns.end());

  const int heldout_count = size / 5;
  SyntheticCorpus corpus;
  corpus.train_trees = build_split(size - heldout_count, train_nouns, rng);
  corpus.heldout_trees = build_split(heldout_count, test_nouns, rng);
  return corpus;
}

}  // namespace agt
