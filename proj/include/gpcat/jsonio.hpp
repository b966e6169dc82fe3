#pragma once

#include <cstddef>
#include <string>

#include "json.hpp"

#include "gpcat/errors.hpp"
#include "gpcat/fingroup.hpp"
#include "gpcat/gposet.hpp"
#include "gpcat/nerve.hpp"
#include "gpcat/pi1.hpp"
#include "gpcat/quotcat.hpp"
#include "gpcat/report.hpp"

namespace gpcat {

/// Key order in emitted documents follows insertion, so identical inputs
/// serialize byte-identically.
using Json = nlohmann::ordered_json;

constexpr int kFormatVersion = 1;

/// {"type": "perm"|"matrix", "degree": n, "p": prime (matrix only),
///  "generators": [image array | row-major matrix, ...]}.
/// Groups are rebuilt from their generators; element indexing is the
/// deterministic closure order, so emitted indices stay meaningful.
/// Matrix entries are reduced mod p on ingest.  Coset groups have no
/// serialized form and are rejected.
Json group_to_json(const FinGroup& g);
GroupPtr group_from_json(const Json& j, const std::string& at = "/group",
                         std::size_t max_order = kDefaultOrderCap);

/// {"format": 1, "group": ..., "items": [names...],
///  "leq": [[i, j], ...] (every related pair, lexicographic),
///  "action": full table indexed [element][item],
///  "links": {item name: [element indices generating the link]}}.
/// Items missing from "links" get the trivial link on ingest; emitted
/// documents always list every item with the full member list.
Json poset_to_json(const GPoset& p);
GPoset poset_from_json(const Json& j, std::size_t max_order = kDefaultOrderCap);

/// Category dump: objects, per-pair class lists (members and canonical
/// representative), identity class indices and all nonempty composition
/// tables, keyed deterministically for byte-stable regression files.
Json category_to_json(const QuotCategory& c);

Json homology_to_json(const HomologyResult& h);
Json presentation_to_json(const Presentation& p);
Json report_to_json(const Report& r);

}  // namespace gpcat
