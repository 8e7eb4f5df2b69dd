#pragma once

#include <iosfwd>
#include <string>

#include "dtt/dirt.hpp"
#include "dtt/ftt.hpp"
#include "dtt/sirt.hpp"

namespace dtt {

// Binary formats, little-endian, version byte first. FTT: header with
// dimension, ranks and basis descriptors, then core payloads as 64-bit
// floats. SIRT appends the marginalization tensors, z_hat and gamma. A DIRT
// file is a manifest (reference, schedule, shifts, an opaque metadata string)
// followed by the layer payloads. Round trips are bitwise exact.

void save_ftt(std::ostream& os, const Ftt& f);
Ftt load_ftt(std::istream& is);
void save_ftt(const std::string& path, const Ftt& f);
Ftt load_ftt(const std::string& path);

void save_sirt(std::ostream& os, const Sirt& s);
Sirt load_sirt(std::istream& is);

/// meta is stored verbatim (the CLI keeps its target descriptor there).
void save_dirt(const std::string& path, const Dirt& d,
               const std::string& meta = "");
Dirt load_dirt(const std::string& path, std::string* meta = nullptr);

}  // namespace dtt
