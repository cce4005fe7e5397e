#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "predprey/errors.hpp"
#include "predprey/snapshot.hpp"

using namespace predprey;

TEST(Snapshot, RoundTripIsBitExact) {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> dist(0.0, 10.0);
  for (const Grid& g : {Grid::line(7, 1.25), Grid(2, {5, 6}, {1.0 / 3.0, 2.0})}) {
    Field f(g);
    for (double& x : f.values()) x = dist(rng) / 3.0;
    std::stringstream buf;
    write_snapshot(buf, f, 0.1 + 0.2);
    const Snapshot s = read_snapshot(buf);
    EXPECT_EQ(s.time, 0.1 + 0.2);
    EXPECT_TRUE(s.field.grid() == g);
    for (std::size_t k = 0; k < f.size(); ++k) EXPECT_EQ(s.field[k], f[k]);
  }
}

TEST(Snapshot, HeaderLayout) {
  std::stringstream buf;
  write_snapshot(buf, Field(Grid(2, {4, 5}, {1.0, 2.0}), 1.0), 3.0);
  std::string header;
  std::getline(buf, header);
  EXPECT_EQ(header, "2 4 5 1 2 3");
  int rows = 0;
  for (std::string line; std::getline(buf, line);) ++rows;
  EXPECT_EQ(rows, 5);
}

TEST(Snapshot, RejectsMalformedInput) {
  for (const char* text : {"", "3 4 1 0\n1 2 3 4\n", "1 4 1 0\n1 2 3\n", "1 4 1 0\n1 2 x 4\n"}) {
    std::stringstream buf(text);
    EXPECT_THROW(read_snapshot(buf), Error) << text;
  }
}
