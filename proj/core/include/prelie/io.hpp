#pragma once

#include <iosfwd>
#include <string>

#include "prelie/ainfinity.hpp"
#include "prelie/maurer_cartan.hpp"

namespace prelie {

/// A parsed input file: one graph with its structure plus named auxiliary
/// data. Structure tables on disk default to the m-convention and are
/// converted on ingest; cochain/functor/transformation components are always
/// stored in the shifted (mu) convention.
struct InputDocument {
  int format_version = 1;
  std::string convention = "m";  // convention of the operations table on disk
  std::unique_ptr<GradedGraph> graph;
  AStructure structure;
  std::map<std::string, Cochain> cochains;
  std::map<std::string, AFunctor> functors;  // endofunctors of the structure
  struct Transformation {
    std::string from, to;  // functor names or "id"
    int degree = 0;
    Cochain components;
  };
  std::map<std::string, Transformation> transformations;
  std::map<std::string, PolynomialPath> paths;
};

InputDocument load_document(const std::string& path);
InputDocument parse_document(const std::string& text, const std::string& origin);

/// Canonical serialization; loading the output reproduces it byte for byte.
std::string serialize_document(const InputDocument& doc);

/// Canonical serialization of a bare structure (used by glue/restrict/twist
/// emitters). Operations are written in the mu convention.
std::string serialize_structure(const GradedGraph& g, const Cochain& mu);

}  // namespace prelie
