#include "sh2geo/mesh_io.hpp"

#include <cstdio>
#include <stdexcept>

#include "sh2geo/expmap.hpp"

namespace sh2geo {

namespace {

struct File {
  explicit File(const std::string& path) : f(std::fopen(path.c_str(), "w")) {
    if (!f) throw std::runtime_error("cannot open " + path);
  }
  ~File() {
    if (f) std::fclose(f);
  }
  File(const File&) = delete;
  File& operator=(const File&) = delete;
  std::FILE* f;
};

bool ends_with(const std::string& s, const char* suffix) {
  const std::string suf(suffix);
  return s.size() >= suf.size() &&
         s.compare(s.size() - suf.size(), suf.size(), suf) == 0;
}

}  // namespace

const char* stratum_name(Stratum s) {
  switch (s) {
    case Stratum::C1: return "C1";
    case Stratum::C2: return "C2";
    case Stratum::C3: return "C3";
    case Stratum::C4: return "C4";
    case Stratum::C5: return "C5";
  }
  return "?";
}

const char* family_name(PlaneFamily f) {
  switch (f) {
    case PlaneFamily::kMax: return "Max";
    case PlaneFamily::kConjCut: return "ConjCut";
    case PlaneFamily::kRest: return "Rest";
    case PlaneFamily::kOrigin: return "Origin";
  }
  return "?";
}

void write_csv(const std::string& path, const MeshOutput& mesh) {
  File out(path);
  std::fputs("x,y,z,gamma,c,t,stratum,family,index,R1,R2\n", out.f);
  for (const MeshVertex& v : mesh.vertices) {
    const auto [r1, r2] = r1r2(v.p);
    std::fprintf(out.f,
                 "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%s,%s,%d,%.17g,%.17g\n",
                 v.p.x, v.p.y, v.p.z, v.lambda.gamma, v.lambda.c, v.t,
                 stratum_name(v.tag.stratum),
                 v.plane_index ? family_name(family_of_index(v.plane_index))
                               : "-",
                 v.plane_index, r1, r2);
  }
}

void write_jsonl(const std::string& path, const MeshOutput& mesh) {
  File out(path);
  for (const MeshVertex& v : mesh.vertices) {
    const auto [r1, r2] = r1r2(v.p);
    std::fprintf(
        out.f,
        "{\"x\":%.17g,\"y\":%.17g,\"z\":%.17g,\"gamma\":%.17g,\"c\":%.17g,"
        "\"t\":%.17g,\"stratum\":\"%s\",\"family\":\"%s\",\"index\":%d,"
        "\"R1\":%.17g,\"R2\":%.17g}\n",
        v.p.x, v.p.y, v.p.z, v.lambda.gamma, v.lambda.c, v.t,
        stratum_name(v.tag.stratum),
        v.plane_index ? family_name(family_of_index(v.plane_index)) : "-",
        v.plane_index, r1, r2);
  }
}

void write_obj(const std::string& path, const MeshOutput& mesh) {
  File out(path);
  for (const MeshVertex& v : mesh.vertices)
    std::fprintf(out.f, "v %.17g %.17g %.17g\n", v.p.x, v.p.y, v.p.z);
  for (const auto& f : mesh.faces)
    std::fprintf(out.f, "f %d %d %d\n", f[0] + 1, f[1] + 1, f[2] + 1);
}

void save_mesh(const std::string& path, const MeshOutput& mesh) {
  if (ends_with(path, ".csv")) return write_csv(path, mesh);
  if (ends_with(path, ".jsonl")) return write_jsonl(path, mesh);
  if (ends_with(path, ".obj")) return write_obj(path, mesh);
  throw std::runtime_error("save_mesh: unknown extension (use .csv/.jsonl/.obj)");
}

}  // namespace sh2geo
