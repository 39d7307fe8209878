#pragma once

namespace mbfm::bundled {

// Raw JSON of the data files embedded at build time (see data/).
const char* taxonomy_catalog_json();
const char* stride_applicability_json();

} // namespace mbfm::bundled
