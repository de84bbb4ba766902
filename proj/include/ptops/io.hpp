#pragma once

#include <stdexcept>
#include <string>

#include "json.hpp"
#include "ptops/presheaf.hpp"

namespace ptops {

using Json = nlohmann::json;

/** Unreadable file, unparsable text, or a document that violates the schema. */
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/** Parses a JSON document from disk; throws InputError with the parser message. */
Json read_json_file(const std::string& path);

/**
 * Site documents: {"objects": [names], "arrows": [{"name","dom","cod"}],
 * "compose": [[g, f, h], ...]} with g∘f = h.  Identity arrows and identity
 * composites may be omitted.  Shape errors throw InputError; category-law
 * violations are left to validate_category.
 */
RawCat site_from_json(const Json& doc);

/** Canonical emission: sorted keys, non-identity arrows and composites only. */
Json site_to_json(const FinCat& c);

/** Canonical text of a document: two-space indent, sorted keys, trailing newline. */
std::string canonical_text(const Json& doc);

/** FNV-1a 64-bit digest of the canonical site serialization, as 16 hex digits. */
std::string site_digest(const FinCat& c);

/**
 * Presheaf documents: {"site": inline object | file path | absent,
 * "variance": "presheaf" | "copresheaf", "sets": {object: [elements]},
 * "action": {arrow: {element: element}}}.  A contravariant document reads
 * actions as maps X(cod f) -> X(dom f); a covariant one ("copresheaf") reads
 * them the other way and is ingested over the opposite category.  Either
 * way the effective index category must equal `site`.  Element lists are
 * sorted at ingestion; identity actions may be omitted.
 */
Presheaf presheaf_from_json(const Json& doc, const CatPtr& site,
                            const std::string& base_dir = ".");

/** Reads and assembles a presheaf file over the given site. */
Presheaf load_presheaf_file(const std::string& path, const CatPtr& site);

/** Canonical emission with the site inlined and identity actions omitted. */
Json presheaf_to_json(const Presheaf& x);

}  // namespace ptops
