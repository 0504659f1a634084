#ifndef FHC_TEST_FIXTURES_HPP
#define FHC_TEST_FIXTURES_HPP

#include <string>

#include "fhc/io.hpp"

inline std::string fixture_path(const std::string& name) { return std::string(FHC_FIXTURE_DIR) + "/" + name; }

inline fhc::FacetedSkeleton load_skeleton(const std::string& name) {
    return fhc::io::skeleton_from_json(fhc::io::read_file(fixture_path(name)));
}

#endif
