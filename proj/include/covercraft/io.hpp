#pragma once

#include <iosfwd>
#include <string>

#include "covercraft/codes.hpp"

namespace covercraft {

// Text formats. Both start with
//   covercraft 1
//   field <p> <degree of each tower step, comma separated>
//   modulus <coefficients low first> [; <next step>]
// followed by
//   code <q> <r> <n>      and r rows of n element encodings, or
//   pg <v> <q> <count>    and one point of v+1 encodings per line.
// Readers also accept a bare "code"/"pg" header, taking GF(q) over its prime
// field. Anything malformed raises Error(Parse).

std::string field_header(const Field& f);

void write_code(std::ostream& os, const Code& c);
Code read_code(std::istream& is);
void write_points(std::ostream& os, const PointSet& s);
PointSet read_points(std::istream& is);

// "partition <n> <k>" then k lines of column indices
void write_partition(std::ostream& os, const Partition& p, std::size_t n);
Partition read_partition(std::istream& is, std::size_t* n = nullptr);

Code load_code(const std::string& path);
void save_code(const std::string& path, const Code& c);
PointSet load_points(const std::string& path);
void save_points(const std::string& path, const PointSet& s);
Partition load_partition(const std::string& path);
void save_partition(const std::string& path, const Partition& p, std::size_t n);

// FNV-1a of the file contents, hex
std::string file_digest(const std::string& path);

}  // namespace covercraft
