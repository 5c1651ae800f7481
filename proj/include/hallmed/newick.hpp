#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "hallmed/tree.hpp"

namespace hallmed {

// Reads Newick without caring about the root: an unlabeled root of degree 2
// is suppressed and an unlabeled root with one child is dropped. Branch
// lengths are accepted and discarded. Interior labels are kept.
Tree parse_newick(std::string_view text);

// Canonical text: rooted at the neighbor of the smallest leaf label, children
// ordered by the smallest label in their subtree. A single edge prints as
// "(a,b);" and a single vertex as "a;".
std::string serialize_newick(const Tree& t);

// Stable display names for vertices: labeled vertices use their label,
// unlabeled ones are "v0", "v1", ... in the preorder of the canonical
// serialization.
std::vector<std::string> canonical_vertex_names(const Tree& t);

}  // namespace hallmed
