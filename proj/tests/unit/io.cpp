#include <cstdio>
#include <fstream>
#include <sstream>

#include "helpers.hpp"
#include "toda/io.hpp"

using namespace toda;

TEST_SUITE("io") {
  TEST_CASE("series and point round trips") {
    Rng rng(1);
    const Point pt = random_point(rng);
    const Point back = point_from_json(json::parse(to_json(pt).dump()));
    CHECK(back.lambda == pt.lambda);
    CHECK(back.lambda_bar == pt.lambda_bar);
    CHECK(series_from_json(to_json(LaurentSeries())).empty());
  }

  TEST_CASE("chart round trip") {
    FlatChart c = FlatChart::zeros(3, {0.1, 0.2}, {-0.3, 0.0});
    c.set_tn(-2, {0.5, -0.25});
    const json j = to_json(c);
    CHECK(j["t"].contains("-2"));
    const FlatChart b = chart_from_json(j);
    CHECK(b.tn(-2) == c.tn(-2));
    CHECK(b.u == c.u);
    CHECK(b.v == c.v);
  }

  TEST_CASE("loop point round trip") {
    Rng rng(2);
    LoopFamily fam;
    fam.K = 8;
    const LoopPoint L = random_loop(rng, fam);
    const LoopPoint b = loop_point_from_json(json::parse(to_json(L).dump()));
    CHECK(max_diff(b.lambda, L.lambda) == 0.0);
    CHECK(max_diff(b.lambda_bar, L.lambda_bar) == 0.0);
  }

  TEST_CASE("malformed input") {
    CHECK_THROWS(series_from_json(json::parse(R"({"lo": 0, "re": [1, 2], "im": [0]})")));
    CHECK_THROWS(complex_from_json(json::parse("[1]")));
  }

  TEST_CASE("fixed formatting") {
    CHECK(fmt(0.1) == "0.10000000000000001");
    CHECK(fmt(1.0) == "1");
  }

  TEST_CASE("atomic write") {
    const std::string path = "io_test_atomic.txt";
    write_file_atomic(path, "abc\n");
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    CHECK(ss.str() == "abc\n");
    std::remove(path.c_str());
  }

  TEST_CASE("flow names") {
    CHECK(parse_flow("s1") == FlowTag::s(1));
    CHECK(parse_flow("sbar2") == FlowTag::sbar(2));
    CHECK(parse_flow("t:-1") == FlowTag::t(-1));
    CHECK(parse_flow("u") == FlowTag::u());
    CHECK(parse_flow("v") == FlowTag::v());
    CHECK(flow_name(FlowTag::t(3)) == "t:3");
    CHECK(thrown_kind([] { parse_flow("q7"); }) == ErrorKind::InvalidArgument);
    CHECK(thrown_kind([] { parse_flow("s0"); }) == ErrorKind::InvalidArgument);
  }
}
