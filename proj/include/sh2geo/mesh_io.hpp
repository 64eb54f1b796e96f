#pragma once

#include <string>

#include "sh2geo/sampling.hpp"

namespace sh2geo {

/// Writes a mesh in the format selected by the file extension:
/// .csv (one row per vertex), .jsonl (one JSON object per vertex) or
/// .obj (ASCII vertex/face records).  All numbers carry 17 significant
/// digits.
void save_mesh(const std::string& path, const MeshOutput& mesh);

void write_csv(const std::string& path, const MeshOutput& mesh);
void write_jsonl(const std::string& path, const MeshOutput& mesh);
void write_obj(const std::string& path, const MeshOutput& mesh);

const char* stratum_name(Stratum s);
const char* family_name(PlaneFamily f);

}  // namespace sh2geo
