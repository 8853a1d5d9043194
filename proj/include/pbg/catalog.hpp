#pragma once

#include <string>
#include <vector>

#include "pbg/io.hpp"

namespace pbg {

struct CatalogEntry {
    std::string file;  // e.g. "pbgauge0_Z2_M2.json"
    json document;
};

// One self-contained document per scenario, plus catalog.json holding all of them.
std::vector<CatalogEntry> catalog_entries();
json catalog_document();

// Built-in instances, shared so that repeated use emits one stanza per group.
struct CatalogGroups {
    GroupRef trivial, Z2, Z3, Z4, S3;
};
const CatalogGroups& catalog_groups();

CrossedModule catalog_a3_s3();
// Z3 with Z2 acting by inversion, d trivial.
CrossedModule catalog_abelian_dtrivial();
PrincipalBundle catalog_pbgauge0(unsigned n, std::size_t m);
Surjection catalog_point_surjection(const std::vector<std::string>& m);

}  // namespace pbg
