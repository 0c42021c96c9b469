#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sstream>

#include "covercraft/blocking.hpp"
#include "covercraft/concat.hpp"
#include "covercraft/io.hpp"

using namespace covercraft;

TEST_CASE("codes round-trip over a tower") {
    const Field f = Field::extend(Field::create(2, 2), 2);
    const Code c(hamming_pcm(2, f));
    std::stringstream ss;
    write_code(ss, c);
    const Code back = read_code(ss);
    CHECK(back.field().q() == 16);
    CHECK(back.field().ext_degree() == f.ext_degree());
    CHECK(back.field().base()->q() == 4);
    CHECK(back.n() == c.n());
    for (std::size_t i = 0; i < c.r(); ++i)
        for (std::size_t j = 0; j < c.n(); ++j) CHECK(back.H().at(i, j) == c.H().at(i, j));
}

TEST_CASE("point sets round-trip") {
    const Field f = Field::prime(5);
    const PointSet s = weight_set_bk(3, f, 2);
    std::stringstream ss;
    write_points(ss, s);
    const PointSet back = read_points(ss);
    CHECK(back.points() == s.points());
    CHECK(back.v() == 3);
}

TEST_CASE("partitions round-trip") {
    Partition p;
    p.subsets = {{0, 3}, {1}, {2, 4}};
    std::stringstream ss;
    write_partition(ss, p, 5);
    std::size_t n = 0;
    const Partition back = read_partition(ss, &n);
    CHECK(n == 5);
    CHECK(back.subsets == p.subsets);
}

TEST_CASE("bare headers and comments") {
    std::istringstream in("# a ternary code\ncode 3 2 4\n1 0 1 1\n0 1 1 2\n");
    const Code c = read_code(in);
    CHECK(c.field().q() == 3);
    CHECK(covering_radius(c) == 1);
}

TEST_CASE("malformed input is a parse error") {
    auto kind = [](const std::string& text, bool pg) {
        std::istringstream in(text);
        try {
            if (pg) read_points(in);
            else read_code(in);
        } catch (const Error& e) {
            return e.kind();
        }
        return ErrorKind::NoWitness;  // sentinel: nothing thrown
    };
    CHECK(kind("code 3 2 4\n1 0 1\n0 1 1 2\n", false) == ErrorKind::Parse);
    CHECK(kind("code 3 2 4\n1 0 1 3\n0 1 1 2\n", false) == ErrorKind::Parse);
    CHECK(kind("code 6 1 1\n1\n", false) == ErrorKind::Parse);
    CHECK(kind("pg 2 3 2\n1 0 0\n2 0 0\n", true) == ErrorKind::Parse);  // same point twice
    CHECK(kind("covercraft 1\nfield 2 2\nmodulus 1 0 1\ncode 4 1 1\n1\n", false) == ErrorKind::Parse);
    CHECK(kind("covercraft 2\ncode 3 1 1\n1\n", false) == ErrorKind::Parse);
    CHECK(kind("", false) == ErrorKind::Parse);

    // rank is not a format property; the radius computation rejects it
    std::istringstream low("code 3 2 2\n1 1\n2 2\n");
    const Code c = read_code(low);
    CHECK_THROWS_AS(covering_radius(c), Error);

    std::istringstream bad("partition 4 2\n0 1\n1 2 3\n");
    CHECK_THROWS_AS(read_partition(bad), Error);
}

TEST_CASE("file digests") {
    const std::string path = "io_digest_tmp.txt";
    save_points(path, weight_set_bk(2, Field::prime(3), 1));
    const auto d = file_digest(path);
    CHECK(d.size() == 16);
    CHECK(file_digest(path) == d);
    CHECK(load_points(path).size() == weight_set_bk(2, Field::prime(3), 1).size());
    std::remove(path.c_str());
    CHECK_THROWS_AS(file_digest(path), Error);
}
