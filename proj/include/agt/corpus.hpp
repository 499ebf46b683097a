#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "agt/tensor.hpp"

namespace agt {

// One node of a sentiment treebank tree: internal nodes carry a label and
// children, leaves carry a label and the surface token.
struct LabeledTree {
  int label = 0;
  std::string token;
  std::vector<LabeledTree> children;

  bool is_leaf() const { return children.empty(); }
  int node_count() const;
  int leaf_count() const;
  void collect_tokens(std::vector<std::string>& out) const;
  std::vector<std::string> tokens() const;

  bool operator==(const LabeledTree&) const = default;
};

class TreebankParseError : public std::runtime_error {
 public:
  TreebankParseError(const std::string& what, std::size_t offset)
      : std::runtime_error(what + " (byte " + std::to_string(offset) + ")"), offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

// Grammar: TREE := "(" LABEL (TOKEN | TREE+) ")", LABEL := integer 0..4,
// TOKEN := maximal run of non-space, non-paren characters.
LabeledTree parse_treebank_line(std::string_view line);
std::string render_treebank_line(const LabeledTree& tree);
std::vector<LabeledTree> load_treebank_file(const std::string& path);
void save_treebank_file(const std::string& path, std::span<const LabeledTree> trees);

// Word ids. Id 0 is reserved for unknown words; lookups try the ASCII
// lowercase form first, then the verbatim token, then fall back to unknown.
class Vocabulary {
 public:
  Vocabulary();
  explicit Vocabulary(std::vector<std::string> words);  // words[0] must be the unknown marker

  int add(const std::string& word);
  int lookup(const std::string& token) const;
  bool contains(const std::string& word) const;
  int unknown_id() const { return 0; }
  int size() const { return static_cast<int>(words_.size()); }
  const std::string& word(int id) const { return words_.at(static_cast<std::size_t>(id)); }
  const std::vector<std::string>& words() const { return words_; }

  static std::string lowercase_ascii(std::string_view token);

 private:
  std::unordered_map<std::string, int> ids_;
  std::vector<std::string> words_;
};

struct TrainingUnit {
  std::vector<int> tokens;
  int label = 0;
  bool is_full_sentence = false;
};

enum class UnitMode { kSentencesOnly, kPhrasesAndSentences };

// Sentences-only yields one unit (root yield + root label). Phrase mode
// yields one unit per node, preorder, duplicates kept; only the root unit is
// flagged as a full sentence. grow_vocab adds unseen lowercased tokens (use
// it for the training split only).
std::vector<TrainingUnit> extract_training_units(const LabeledTree& tree, UnitMode mode,
                                                 Vocabulary& vocab, bool grow_vocab);

struct EmbeddingTable {
  int dim = 0;
  std::vector<double> rows;                // vocab_size x dim, row-major
  std::vector<std::uint8_t> pretrained;    // per row: copied from file vs random

  int vocab_size() const { return dim == 0 ? 0 : static_cast<int>(rows.size()) / dim; }
  std::span<const double> row(int id) const {
    return {rows.data() + static_cast<std::size_t>(id) * dim, static_cast<std::size_t>(dim)};
  }
};

struct EmbeddingLoadResult {
  EmbeddingTable table;
  int covered = 0;  // vocabulary rows found in the file
};

// File format: one "word v1 ... v_dim" line per word, single-space separated.
// Vocabulary words missing from the file get uniform [-0.05, 0.05] rows drawn
// deterministically from the seed, in id order.
EmbeddingLoadResult load_embeddings(const std::string& path, const Vocabulary& vocab,
                                    std::uint64_t seed);
EmbeddingTable random_embeddings(int vocab_size, int dim, std::uint64_t seed);

struct Batch {
  Tensor input;                    // batch x max_len x dim, constant
  std::vector<std::uint8_t> mask;  // batch * max_len, 1 marks a real token
  std::vector<int> labels;
  std::vector<int> lengths;
  int size = 0;
  int max_len = 0;
};

Batch encode_batch(std::span<const TrainingUnit> units, const EmbeddingTable& embeddings);

// Deterministic negation grammar over "the <noun> was [not] [very] <adj>".
// Labels: very good 4, good 3, bad 1, very bad 0; "not" reflects through 2.
// The held-out split uses noun fillers that never occur in training.
struct SyntheticCorpus {
  std::vector<LabeledTree> train_trees;
  std::vector<LabeledTree> heldout_trees;
};

int synthetic_label(bool negated, bool intensified, bool positive);
SyntheticCorpus generate_synthetic_corpus(int size, std::uint64_t seed);

}  // namespace agt
