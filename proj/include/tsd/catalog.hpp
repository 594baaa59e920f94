#pragma once

#include <string>
#include <vector>

#include "tsd/diagram.hpp"

namespace tsd {

struct CatalogEntry {
    std::string name;
    ShadowDiagram diagram;
    ComplexityTuple expected;
    bool efficient_claimed = false;  // meaningful only when expected.b >= 1
    int expected_components = 0;     // n; 0 when there is no surface
    std::string note;                // what the entry encodes
};

struct CatalogVerifyResult {
    bool ok = true;
    std::vector<std::string> failures;  // one line per failing entry/check
    int entries_checked = 0;
};

// Built-in registry of validated example diagrams. Lookup throws
// PreconditionError listing the known names when the name is unknown.
const std::vector<CatalogEntry>& catalog_entries();
const CatalogEntry& catalog_get(const std::string& name);
std::vector<std::string> catalog_names();

// Revalidates every entry and recomputes its tuple, surface Euler
// characteristic, component count, efficiency flag and homological k-checks.
CatalogVerifyResult catalog_verify_all();

} // namespace tsd
