#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "covercraft/codes.hpp"

namespace covercraft {

// One row of a stored table file. Tables I, III, IV are indexed by q; V by
// (q, r); VI by (q, gamma) and hold a decimal string.
struct TableEntry {
    std::string table;
    std::uint64_t q = 0;
    unsigned r = 0;      // Table V only
    unsigned gamma = 0;  // Table VI only
    std::string value;   // as written in the file
    std::vector<int> distances;
    std::string distances_raw;
    bool dot = false;
    std::string provenance;

    BigInt length() const { return BigInt(value); }
};

class TableStore {
public:
    static TableStore load(const std::string& dir = COVERCRAFT_DATA_DIR);
    // parse one CSV file; Error(Parse) on malformed rows
    static std::vector<TableEntry> parse(const std::string& text, std::string* header = nullptr);
    static std::string serialize(const std::vector<TableEntry>& rows, const std::string& header);

    void add_file(const std::string& path);
    const std::vector<TableEntry>& rows(const std::string& table) const;
    const std::string& header(const std::string& table) const;
    const TableEntry* find(const std::string& table, std::uint64_t q, unsigned r = 0) const;

    // lbar_q(r, R) where some table stores it: I for (3,2), III for (4,3),
    // IV for (5,3), V for (r,2).
    std::optional<BigInt> ell_bar(std::uint64_t q, unsigned r, unsigned R) const;
    bool lists_distance(const std::string& table, std::uint64_t q, int d) const;
    std::vector<std::string> tables() const;

private:
    std::map<std::string, std::vector<TableEntry>> rows_;
    std::map<std::string, std::string> headers_;
};

}  // namespace covercraft
