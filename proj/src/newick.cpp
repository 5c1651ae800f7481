#include "hallmed/newick.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <optional>

#include "hallmed/error.hpp"

namespace hallmed {

namespace {

constexpr std::string_view kDelimiters = "(),:;";

bool is_label_char(char c) {
  return !std::isspace(static_cast<unsigned char>(c)) && kDelimiters.find(c) == std::string_view::npos;
}

struct RawNode {
  std::string label;
  std::vector<std::size_t> children;
};

class NewickReader {
 public:
  explicit NewickReader(std::string_view text) : text_(text) {}

  std::vector<RawNode> read() {
    skip_space();
    if (at_end()) throw Error(ErrorCode::EmptyInput, "empty Newick text");
    parse_subtree();
    skip_space();
    if (!at_end() && peek() == ')') throw Error(ErrorCode::UnbalancedParens, "unmatched ')'");
    if (at_end() || peek() != ';') throw Error(ErrorCode::MalformedNewick, "missing trailing ';'");
    ++pos_;
    skip_space();
    if (!at_end()) throw Error(ErrorCode::MalformedNewick, "text after ';'");
    return std::move(nodes_);
  }

 private:
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }

  void skip_space() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
  }

  std::string read_label() {
    skip_space();
    const std::size_t start = pos_;
    while (!at_end() && is_label_char(peek())) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  void skip_branch_length() {
    skip_space();
    if (at_end() || peek() != ':') return;
    ++pos_;
    skip_space();
    const std::size_t start = pos_;
    while (!at_end() && is_label_char(peek())) ++pos_;
    if (pos_ == start) throw Error(ErrorCode::MalformedNewick, "empty branch length");
  }

  std::size_t parse_subtree() {
    skip_space();
    if (at_end()) throw Error(ErrorCode::UnbalancedParens, "unexpected end of text");
    const std::size_t id = nodes_.size();
    nodes_.emplace_back();
    if (peek() == '(') {
      ++pos_;
      for (;;) {
        const std::size_t child = parse_subtree();
        nodes_[id].children.push_back(child);
        skip_space();
        if (at_end() || peek() == ';') throw Error(ErrorCode::UnbalancedParens, "missing ')'");
        if (peek() == ',') {
          ++pos_;
          continue;
        }
        if (peek() == ')') {
          ++pos_;
          break;
        }
        throw Error(ErrorCode::MalformedNewick, std::string("unexpected '") + peek() + "'");
      }
      nodes_[id].label = read_label();
    } else {
      if (peek() == ')') throw Error(ErrorCode::UnbalancedParens, "unmatched ')'");
      nodes_[id].label = read_label();
      if (nodes_[id].label.empty()) throw Error(ErrorCode::MalformedNewick, "empty leaf label");
    }
    skip_branch_length();
    return id;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::vector<RawNode> nodes_;
};

// Root and child order shared by serialization and vertex naming.
struct CanonicalLayout {
  VertexId root = 0;
  std::vector<std::vector<VertexId>> children;
};

CanonicalLayout canonical_layout(const Tree& t) {
  CanonicalLayout layout;
  const std::size_t n = t.vertex_count();
  layout.children.resize(n);
  if (n == 0) return layout;

  std::vector<std::string_view> names;
  for (const auto& [label, v] : t.labeled()) names.push_back(label);  // map is sorted
  constexpr std::size_t kNoRank = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> rank(n, kNoRank);
  {
    std::size_t r = 0;
    for (const auto& [label, v] : t.labeled()) rank[v] = r++;
  }

  std::optional<VertexId> smallest_leaf;
  for (VertexId v = 0; v < n; ++v) {
    if (t.degree(v) == 1 && t.is_labeled(v) && (!smallest_leaf || rank[v] < rank[*smallest_leaf])) {
      smallest_leaf = v;
    }
  }
  layout.root = smallest_leaf ? t.neighbors(*smallest_leaf).front() : 0;

  // Parents and a preorder from the root, then smallest-label aggregation in
  // reverse preorder.
  std::vector<VertexId> parent(n, layout.root);
  std::vector<VertexId> order;
  order.reserve(n);
  std::vector<VertexId> stack{layout.root};
  std::vector<bool> seen(n, false);
  seen[layout.root] = true;
  while (!stack.empty()) {
    VertexId v = stack.back();
    stack.pop_back();
    order.push_back(v);
    for (VertexId w : t.neighbors(v)) {
      if (!seen[w]) {
        seen[w] = true;
        parent[w] = v;
        stack.push_back(w);
      }
    }
  }
  std::vector<std::size_t> min_rank(rank);
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    if (*it == layout.root) continue;
    min_rank[parent[*it]] = std::min(min_rank[parent[*it]], min_rank[*it]);
    layout.children[parent[*it]].push_back(*it);
  }
  for (auto& kids : layout.children) {
    std::sort(kids.begin(), kids.end(), [&](VertexId a, VertexId b) {
      return std::tie(min_rank[a], a) < std::tie(min_rank[b], b);
    });
  }
  return layout;
}

void write_subtree(const Tree& t, const CanonicalLayout& layout, VertexId v, std::string& out) {
  const auto& kids = layout.children[v];
  if (!kids.empty()) {
    out += '(';
    for (std::size_t i = 0; i < kids.size(); ++i) {
      if (i) out += ',';
      write_subtree(t, layout, kids[i], out);
    }
    out += ')';
  }
  out += t.label(v);
}

}  // namespace

Tree parse_newick(std::string_view text) {
  std::vector<RawNode> nodes = NewickReader(text).read();

  std::vector<bool> alive(nodes.size(), true);
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    for (std::size_t c : nodes[i].children) edges.emplace_back(i, c);
  }

  // Forget the root: drop a bare root with one child, splice out a bare root
  // with two children.
  std::size_t root = 0;
  for (;;) {
    const RawNode& r = nodes[root];
    if (!r.label.empty() || r.children.size() > 2 || r.children.empty()) break;
    alive[root] = false;
    std::erase_if(edges, [root](const auto& e) { return e.first == root; });
    if (r.children.size() == 2) {
      edges.emplace_back(r.children[0], r.children[1]);
      break;
    }
    root = r.children[0];
  }

  std::vector<VertexId> remap(nodes.size(), 0);
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (!alive[i]) continue;
    remap[i] = static_cast<VertexId>(labels.size());
    labels.push_back(nodes[i].label);
  }
  std::vector<Edge> tree_edges;
  tree_edges.reserve(edges.size());
  for (const auto& [a, b] : edges) tree_edges.push_back({remap[a], remap[b]});
  const std::size_t count = labels.size();
  return Tree(count, tree_edges, std::move(labels));
}

std::string serialize_newick(const Tree& t) {
  if (t.labeled().empty()) throw Error(ErrorCode::UnlabeledLeaf, "tree has no labeled vertex");
  if (!t.is_leaf_labeled()) throw Error(ErrorCode::UnlabeledLeaf, "tree has an unlabeled leaf");
  if (t.vertex_count() == 1) return t.label(0) + ";";
  if (t.vertex_count() == 2) {
    auto a = t.label(0), b = t.label(1);
    if (b < a) std::swap(a, b);
    return "(" + a + "," + b + ");";
  }
  const CanonicalLayout layout = canonical_layout(t);
  std::string out;
  write_subtree(t, layout, layout.root, out);
  out += ';';
  return out;
}

std::vector<std::string> canonical_vertex_names(const Tree& t) {
  std::vector<std::string> names(t.vertex_count());
  if (t.vertex_count() == 0) return names;
  const CanonicalLayout layout = canonical_layout(t);
  std::size_t next = 0;
  std::vector<VertexId> stack{layout.root};
  while (!stack.empty()) {
    VertexId v = stack.back();
    stack.pop_back();
    names[v] = t.is_labeled(v) ? t.label(v) : "v" + std::to_string(next++);
    const auto& kids = layout.children[v];
    for (auto it = kids.rbegin(); it != kids.rend(); ++it) stack.push_back(*it);
  }
  return names;
}

}  // namespace hallmed
