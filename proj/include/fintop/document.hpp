#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "fintop/bundles.hpp"

namespace fintop {

// Malformed document: wrong shape, unknown kind, bad JSON. Object-level
// invariant violations surface as std::invalid_argument instead.
struct parse_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

using json = nlohmann::json;

// One self-describing document format for every object kind, discriminated by
// "kind": space | map | functor | bundle | groth | classtable.
//
// Spaces carry `points` and generator pairs under `leq`; emission always adds
// the full reflexive-transitive closure under `leq_closure`.

json emit_space(const FinSpace& x);
json emit_map(const ContinuousMap& f);
json emit_functor(const TopFunctor& d);
json emit_bundle(const FiberBundle& p);
json emit_groth(const GrothSpace& g);
json emit_classtable(const ClassTable& t);

// Appends the full open-set lattice under "opens"; spaces over 12 points are
// rejected.
void attach_opens(json& space_doc, const FinSpace& x);

FinSpace parse_space(const json& doc);
ContinuousMap parse_map(const json& doc);
TopFunctor parse_functor(const json& doc);

// Bundle documents are parsed unverified; run verify_bundle for witnesses.
struct ParsedBundle {
  ContinuousMap map;
  FinSpace fiber;
};
ParsedBundle parse_bundle(const json& doc);

json parse_text(const std::string& text);

// Detailed invariant check used by the check command: empty vector means the
// document describes a valid object.
struct ValidationReport {
  std::string kind;
  std::vector<std::string> issues;
};
ValidationReport validate_document(const json& doc);

std::string to_document_string(const json& doc);

}  // namespace fintop
