#include "covercraft/tables.hpp"

#include <fstream>
#include <sstream>

namespace covercraft {

namespace {

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    bool quoted = false;
    for (char ch : line) {
        if (ch == '"') {
            quoted = !quoted;
        } else if (ch == ',' && !quoted) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(ch);
        }
    }
    if (quoted) throw Error(ErrorKind::Parse, "unterminated quote: " + line);
    out.push_back(cur);
    return out;
}

std::uint64_t to_u64(const std::string& s, const std::string& line) {
    try {
        std::size_t pos = 0;
        auto v = std::stoull(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw Error(ErrorKind::Parse, "bad integer '" + s + "' in: " + line);
    }
}

std::vector<int> parse_distances(const std::string& s, const std::string& line) {
    std::vector<int> out;
    if (s.empty()) return out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(int(to_u64(tok, line)));
    return out;
}

}  // namespace

std::vector<TableEntry> TableStore::parse(const std::string& text, std::string* header) {
    std::vector<TableEntry> out;
    std::stringstream in(text);
    std::string line;
    if (!std::getline(in, line)) throw Error(ErrorKind::Parse, "empty table file");
    if (header) *header = line;
    const auto cols = split_csv(line);
    std::map<std::string, std::size_t> at;
    for (std::size_t i = 0; i < cols.size(); ++i) at[cols[i]] = i;
    for (const char* need : {"table", "q", "value", "provenance"})
        if (!at.count(need)) throw Error(ErrorKind::Parse, std::string("missing column ") + need);
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        auto f = split_csv(line);
        if (f.size() != cols.size()) throw Error(ErrorKind::Parse, "wrong field count: " + line);
        TableEntry e;
        e.table = f[at["table"]];
        e.q = to_u64(f[at["q"]], line);
        e.value = f[at["value"]];
        e.provenance = f[at["provenance"]];
        if (at.count("r")) e.r = unsigned(to_u64(f[at["r"]], line));
        if (at.count("gamma")) e.gamma = unsigned(to_u64(f[at["gamma"]], line));
        if (at.count("distances")) {
            e.distances_raw = f[at["distances"]];
            e.distances = parse_distances(e.distances_raw, line);
        }
        if (at.count("dot_flag")) e.dot = to_u64(f[at["dot_flag"]], line) != 0;
        out.push_back(std::move(e));
    }
    return out;
}

std::string TableStore::serialize(const std::vector<TableEntry>& rows, const std::string& header) {
    const auto cols = split_csv(header);
    std::string out = header + "\n";
    for (const auto& e : rows) {
        for (std::size_t i = 0; i < cols.size(); ++i) {
            if (i) out += ',';
            const auto& c = cols[i];
            if (c == "table") out += e.table;
            else if (c == "q") out += std::to_string(e.q);
            else if (c == "r") out += std::to_string(e.r);
            else if (c == "gamma") out += std::to_string(e.gamma);
            else if (c == "value") out += e.value;
            else if (c == "distances") out += "\"" + e.distances_raw + "\"";
            else if (c == "dot_flag") out += e.dot ? "1" : "0";
            else if (c == "provenance") out += e.provenance;
        }
        out += '\n';
    }
    return out;
}

void TableStore::add_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw Error(ErrorKind::Parse, "cannot open " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    std::string header;
    auto rows = parse(ss.str(), &header);
    if (rows.empty()) throw Error(ErrorKind::Parse, "no rows in " + path);
    const auto name = rows[0].table;
    headers_[name] = header;
    auto& dst = rows_[name];
    dst.insert(dst.end(), rows.begin(), rows.end());
}

TableStore TableStore::load(const std::string& dir) {
    TableStore t;
    for (const char* n : {"I", "III", "IV", "V", "VI"}) t.add_file(dir + "/table" + n + ".csv");
    return t;
}

const std::vector<TableEntry>& TableStore::rows(const std::string& table) const {
    static const std::vector<TableEntry> none;
    auto it = rows_.find(table);
    return it == rows_.end() ? none : it->second;
}

const std::string& TableStore::header(const std::string& table) const {
    static const std::string none;
    auto it = headers_.find(table);
    return it == headers_.end() ? none : it->second;
}

const TableEntry* TableStore::find(const std::string& table, std::uint64_t q, unsigned r) const {
    for (const auto& e : rows(table))
        if (e.q == q && (table != "V" || e.r == r) && (table != "VI" || e.gamma == r)) return &e;
    return nullptr;
}

std::optional<BigInt> TableStore::ell_bar(std::uint64_t q, unsigned r, unsigned R) const {
    const TableEntry* e = nullptr;
    if (R == 2 && r == 3) e = find("I", q);
    else if (R == 3 && r == 4) e = find("III", q);
    else if (R == 3 && r == 5) e = find("IV", q);
    if (!e && R == 2) e = find("V", q, r);
    if (!e) return std::nullopt;
    return e->length();
}

bool TableStore::lists_distance(const std::string& table, std::uint64_t q, int d) const {
    const auto* e = find(table, q);
    if (!e) return false;
    for (int x : e->distances)
        if (x == d) return true;
    return false;
}

std::vector<std::string> TableStore::tables() const {
    std::vector<std::string> out;
    for (const auto& [k, v] : rows_) out.push_back(k);
    return out;
}

}  // namespace covercraft
