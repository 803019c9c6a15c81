#include "g2calc/g2f.hpp"

#include <bit>
#include <fstream>
#include <stdexcept>

#include "json.hpp"

static_assert(std::endian::native == std::endian::little,
              "g2f payloads are written little-endian");

namespace g2calc {

void write_g2f(const std::string& path, const Field& fld,
               const std::string& kind) {
  nlohmann::ordered_json h;
  h["format"] = "g2f/1";
  h["kind"] = kind;
  h["degree"] = fld.degree;
  h["components"] = fld.comps;
  h["resolutions"] = fld.lat.n;
  h["periods"] = fld.lat.period;
  h["fd_order"] = fld.lat.fd_order;
  h["layout"] = "site-major";
  h["count"] = fld.data.size();
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("g2f: cannot open " + path);
  out << h.dump() << '\n';
  out.write(reinterpret_cast<const char*>(fld.data.data()),
            static_cast<std::streamsize>(fld.data.size() * sizeof(double)));
  if (!out) throw std::runtime_error("g2f: short write to " + path);
}

G2fFile read_g2f(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("g2f: cannot open " + path);
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("g2f: missing header");
  nlohmann::json h = nlohmann::json::parse(line, nullptr, false);
  if (h.is_discarded() || h.value("format", "") != "g2f/1")
    throw std::runtime_error("g2f: not a g2f/1 file: " + path);

  G2fFile out;
  out.kind = h.value("kind", "");
  LatticeSpec lat;
  h.at("resolutions").get_to(lat.n);
  h.at("periods").get_to(lat.period);
  lat.fd_order = h.at("fd_order").get<int>();
  if (lat.fd_order != 2 && lat.fd_order != 4)
    throw std::runtime_error("g2f: unsupported fd_order");
  for (int a = 0; a < 7; ++a)
    if (lat.n[a] < 1 || lat.period[a] <= 0)
      throw std::runtime_error("g2f: bad lattice spec");
  if (h.value("layout", "") != "site-major")
    throw std::runtime_error("g2f: unsupported layout");

  const int degree = h.at("degree").get<int>();
  const int comps = h.at("components").get<int>();
  if (degree >= 0) {
    if (degree > 7 || comps != binom7(degree))
      throw std::runtime_error("g2f: component count does not match degree");
    out.field = Field::form(lat, degree);
  } else {
    if (comps < 1) throw std::runtime_error("g2f: bad component count");
    out.field = Field::plain(lat, comps);
  }
  const auto count = h.at("count").get<unsigned long long>();
  if (count != out.field.data.size())
    throw std::runtime_error("g2f: count does not match lattice");
  in.read(reinterpret_cast<char*>(out.field.data.data()),
          static_cast<std::streamsize>(count * sizeof(double)));
  if (static_cast<unsigned long long>(in.gcount()) !=
      count * sizeof(double))
    throw std::runtime_error("g2f: truncated payload in " + path);
  return out;
}

}  // namespace g2calc
