#include "covercraft/io.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

namespace covercraft {

namespace {

std::vector<Field> tower_of(const Field& f) {
    std::vector<Field> chain{f};
    while (auto b = chain.back().base()) chain.push_back(*b);
    return {chain.rbegin(), chain.rend()};  // prime field first
}

Error parse_error(const std::string& what) { return Error(ErrorKind::Parse, what); }

std::string next_line(std::istream& is) {
    std::string line;
    while (std::getline(is, line)) {
        const auto h = line.find('#');
        if (h != std::string::npos) line.erase(h);
        if (line.find_first_not_of(" \t\r") != std::string::npos) return line;
    }
    throw parse_error("unexpected end of input");
}

template <class T>
T number(std::istringstream& ss, const char* what) {
    long long x;
    if (!(ss >> x) || x < 0) throw parse_error(std::string("expected ") + what);
    return T(x);
}

// reads the optional field/modulus preamble, then the first content line
struct Preamble {
    std::optional<Field> field;
    std::string header;
};

Preamble read_preamble(std::istream& is) {
    Preamble pre;
    std::string line = next_line(is);
    if (line.rfind("covercraft", 0) == 0) {
        std::istringstream ss(line.substr(10));
        if (number<int>(ss, "format version") != 1) throw parse_error("unsupported format version");
        line = next_line(is);
    }
    if (line.rfind("field", 0) == 0) {
        std::istringstream ss(line.substr(5));
        const auto p = number<std::uint32_t>(ss, "characteristic");
        std::string degs;
        if (!(ss >> degs)) throw parse_error("expected tower degrees");
        std::vector<std::uint32_t> d;
        std::stringstream ds(degs);
        for (std::string tok; std::getline(ds, tok, ',');) d.push_back(std::uint32_t(std::stoul(tok)));
        if (d.empty()) throw parse_error("empty tower");
        try {
            Field f = Field::create(p, d[0]);
            for (std::size_t i = 1; i < d.size(); ++i) f = Field::extend(f, d[i]);
            pre.field = f;
        } catch (const Error& e) {
            throw parse_error(std::string("bad field: ") + e.what());
        }
        line = next_line(is);
        if (line.rfind("modulus", 0) == 0) {
            // must agree with the deterministic construction
            const auto chain = tower_of(*pre.field);
            std::stringstream ms(line.substr(7));
            std::size_t level = 1;
            for (std::string part; std::getline(ms, part, ';'); ++level) {
                std::istringstream ps(part);
                std::vector<Elem> coeffs;
                for (long long c; ps >> c;) coeffs.push_back(Elem(c));
                if (level >= chain.size() || coeffs != chain[level].modulus())
                    throw parse_error("modulus does not match the field");
            }
            line = next_line(is);
        }
    }
    pre.header = line;
    return pre;
}

Field field_or_default(const std::optional<Field>& f, std::uint64_t q) {
    if (f) {
        if (f->q() != q) throw parse_error("field order disagrees with header");
        return *f;
    }
    try {
        return field_of_order(q);
    } catch (const Error& e) {
        throw parse_error(e.what());
    }
}

Elem element(std::istringstream& ss, const Field& f) {
    long long x;
    if (!(ss >> x) || x < 0 || std::uint64_t(x) >= f.q()) throw parse_error("bad field element");
    return Elem(x);
}

}  // namespace

std::string field_header(const Field& f) {
    const auto chain = tower_of(f);
    std::ostringstream os;
    os << "field " << f.p() << ' ';
    if (chain.size() == 1) {
        os << 1;
    } else {
        for (std::size_t i = 1; i < chain.size(); ++i) os << (i > 1 ? "," : "") << chain[i].ext_degree();
        os << "\nmodulus";
        for (std::size_t i = 1; i < chain.size(); ++i) {
            if (i > 1) os << " ;";
            for (auto c : chain[i].modulus()) os << ' ' << c;
        }
    }
    return os.str();
}

void write_code(std::ostream& os, const Code& c) {
    const Matrix& H = c.H();
    os << "covercraft 1\n" << field_header(c.field()) << "\ncode " << c.field().q() << ' ' << H.rows() << ' '
       << H.cols() << '\n';
    for (std::size_t i = 0; i < H.rows(); ++i) {
        for (std::size_t j = 0; j < H.cols(); ++j) os << (j ? " " : "") << H.at(i, j);
        os << '\n';
    }
}

Code read_code(std::istream& is) {
    auto pre = read_preamble(is);
    std::istringstream hs(pre.header);
    std::string tag;
    hs >> tag;
    if (tag != "code") throw parse_error("expected 'code q r n', got '" + pre.header + "'");
    const auto q = number<std::uint64_t>(hs, "q");
    const auto r = number<std::size_t>(hs, "r");
    const auto n = number<std::size_t>(hs, "n");
    const Field f = field_or_default(pre.field, q);
    std::vector<Elem> a;
    a.reserve(r * n);
    for (std::size_t i = 0; i < r; ++i) {
        std::istringstream ls(next_line(is));
        for (std::size_t j = 0; j < n; ++j) a.push_back(element(ls, f));
        long long extra;
        if (ls >> extra) throw parse_error("row " + std::to_string(i) + " is too long");
    }
    try {
        return Code(Matrix(f, r, n, std::move(a)));
    } catch (const Error& e) {
        throw parse_error(e.what());
    }
}

void write_points(std::ostream& os, const PointSet& s) {
    os << "covercraft 1\n" << field_header(s.field()) << "\npg " << s.v() << ' ' << s.field().q() << ' ' << s.size()
       << '\n';
    for (const auto& p : s) {
        for (std::size_t i = 0; i < p.size(); ++i) os << (i ? " " : "") << p[i];
        os << '\n';
    }
}

PointSet read_points(std::istream& is) {
    auto pre = read_preamble(is);
    std::istringstream hs(pre.header);
    std::string tag;
    hs >> tag;
    if (tag != "pg") throw parse_error("expected 'pg v q count', got '" + pre.header + "'");
    const auto v = number<int>(hs, "v");
    const auto q = number<std::uint64_t>(hs, "q");
    const auto count = number<std::size_t>(hs, "count");
    const Field f = field_or_default(pre.field, q);
    std::vector<Point> pts;
    for (std::size_t i = 0; i < count; ++i) {
        std::istringstream ls(next_line(is));
        Point p;
        for (int j = 0; j <= v; ++j) p.push_back(element(ls, f));
        long long extra;
        if (ls >> extra) throw parse_error("point " + std::to_string(i) + " has too many coordinates");
        pts.push_back(p);
    }
    try {
        PointSet out = PointSet::from_points(v, f, pts);
        if (out.size() != count) throw parse_error("repeated or zero points");
        return out;
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::Parse) throw;
        throw parse_error(e.what());
    }
}

void write_partition(std::ostream& os, const Partition& p, std::size_t n) {
    os << "partition " << n << ' ' << p.size() << '\n';
    for (const auto& s : p.subsets) {
        for (std::size_t i = 0; i < s.size(); ++i) os << (i ? " " : "") << s[i];
        os << '\n';
    }
}

Partition read_partition(std::istream& is, std::size_t* n_out) {
    std::istringstream hs(next_line(is));
    std::string tag;
    hs >> tag;
    if (tag != "partition") throw parse_error("expected 'partition n k'");
    const auto n = number<std::size_t>(hs, "n");
    const auto k = number<std::size_t>(hs, "k");
    Partition p;
    for (std::size_t i = 0; i < k; ++i) {
        std::istringstream ls(next_line(is));
        std::vector<std::size_t> s;
        for (long long x; ls >> x;) {
            if (x < 0) throw parse_error("negative column index");
            s.push_back(std::size_t(x));
        }
        p.subsets.push_back(s);
    }
    try {
        p.validate(n);
    } catch (const Error& e) {
        throw parse_error(e.what());
    }
    if (n_out) *n_out = n;
    return p;
}

namespace {

std::ifstream open_in(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw parse_error("cannot read " + path);
    return in;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error(ErrorKind::Parse, "cannot write " + path);
    return out;
}

}  // namespace

Code load_code(const std::string& path) {
    auto in = open_in(path);
    return read_code(in);
}

void save_code(const std::string& path, const Code& c) {
    auto out = open_out(path);
    write_code(out, c);
}

PointSet load_points(const std::string& path) {
    auto in = open_in(path);
    return read_points(in);
}

void save_points(const std::string& path, const PointSet& s) {
    auto out = open_out(path);
    write_points(out, s);
}

Partition load_partition(const std::string& path) {
    auto in = open_in(path);
    return read_partition(in);
}

void save_partition(const std::string& path, const Partition& p, std::size_t n) {
    auto out = open_out(path);
    write_partition(out, p, n);
}

std::string file_digest(const std::string& path) {
    auto in = open_in(path);
    std::uint64_t h = 1469598103934665603ull;
    char buf[4096];
    while (in.read(buf, sizeof buf) || in.gcount()) {
        for (std::streamsize i = 0; i < in.gcount(); ++i) {
            h ^= std::uint8_t(buf[i]);
            h *= 1099511628211ull;
        }
    }
    std::ostringstream os;
    os << std::hex << std::setw(16) << std::setfill('0') << h;
    return os.str();
}

}  // namespace covercraft
