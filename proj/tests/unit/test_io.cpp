#include <gtest/gtest.h>

#include "ppm/cna_model.hpp"
#include "ppm/io.hpp"
#include "ppm/simulator.hpp"
#include "support.hpp"

using namespace ppm;
using namespace ppm::testing;

TEST(Vertex, Text) {
  EXPECT_EQ(vertex_text(CharStatePair::root()), "root");
  EXPECT_EQ(vertex_text(CharStatePair::of(3, 2)), "3:2");
  EXPECT_EQ(parse_vertex("3:2"), CharStatePair::of(3, 2));
  EXPECT_EQ(parse_vertex("4:0"), CharStatePair::root());
  EXPECT_EQ(error_kind([] { parse_vertex("x"); }), ErrorKind::Parse);
}

TEST(TensorJson, RoundTrip) {
  TensorDocument doc;
  doc.names = {"a", "b"};
  doc.state_trees = {chain(3), star(3)};
  doc.frequencies = tensor({{{"0.5", "0.3", "0.2"}, {"1/3", "1/3", "1/3"}}});
  const auto text = write_tensor_json(doc);
  const auto back = parse_tensor_json(text);
  EXPECT_EQ(back.names, doc.names);
  EXPECT_EQ(back.state_trees, doc.state_trees);
  ASSERT_TRUE(back.frequencies);
  EXPECT_EQ(*back.frequencies, *doc.frequencies);
  EXPECT_EQ(write_tensor_json(back), text);
}

TEST(TensorJson, Intervals) {
  TensorDocument doc;
  doc.names = {"a"};
  doc.state_trees = {chain(2)};
  auto iv = point_intervals(tensor({{{"0.6", "0.4"}}}));
  iv.lower(0, 0, 1) = q("0.35");
  doc.intervals = iv;
  const auto back = parse_tensor_json(write_tensor_json(doc));
  ASSERT_TRUE(back.intervals);
  EXPECT_EQ(back.intervals->lower, iv.lower);
  EXPECT_EQ(back.intervals->upper, iv.upper);
}

TEST(TensorJson, Errors) {
  EXPECT_EQ(error_kind([] { parse_tensor_json("{"); }), ErrorKind::Parse);
  EXPECT_EQ(error_kind([] { parse_tensor_json(R"({"characters": 3})"); }), ErrorKind::Parse);
}

TEST(MeasurementsTsv, RoundTrip) {
  const auto sim = simulate_instance({.n = 4, .m = 3, .coverage = 300.0, .seed = 9});
  MeasurementTable table{{"s0", "s1", "s2"}, sim.measurements};
  const auto text = write_measurements_tsv(table);
  const auto back = parse_measurements_tsv(text);
  ASSERT_EQ(back.loci.size(), 4u);
  EXPECT_EQ(back.samples, table.samples);
  for (std::size_t c = 0; c < 4; ++c) {
    EXPECT_EQ(back.loci[c].name, table.loci[c].name);
    for (std::size_t p = 0; p < 3; ++p) {
      const auto& a = back.loci[c].samples[p];
      const auto& b = table.loci[c].samples[p];
      EXPECT_EQ(a.vaf, b.vaf);
      EXPECT_EQ(a.vaf_lb, b.vaf_lb);
      EXPECT_EQ(a.vaf_ub, b.vaf_ub);
      EXPECT_EQ(a.mu.loh, b.mu.loh);
    }
  }
  EXPECT_EQ(write_measurements_tsv(back), text);
}

TEST(MeasurementsTsv, Errors) {
  EXPECT_EQ(error_kind([] { parse_measurements_tsv("garbage\n"); }), ErrorKind::Parse);
  EXPECT_EQ(error_kind([] {
              parse_measurements_tsv(
                  "sample_id\tlocus_id\tvaf\tvaf_lb\tvaf_ub\tmu0\tmuLOH\tmuSCD\tmuSCA\n"
                  "s0\tc0\tnope\t\t\t1\t0\t0\t0\n");
            }),
            ErrorKind::Parse);
}

TEST(TruthJson, RoundTrip) {
  const auto sim = simulate_instance({.n = 3, .m = 2, .seed = 4});
  Truth truth{sim.names, sim.tree_ids, sim.global_tree(), std::nullopt};
  const auto back = parse_truth_json(write_truth_json(truth));
  EXPECT_EQ(back.names, truth.names);
  EXPECT_EQ(back.tree_ids, truth.tree_ids);
  EXPECT_EQ(back.tree, truth.tree);
}

TEST(SolutionsJson, RoundTrip) {
  SolutionDocument doc;
  doc.mode = "exact";
  doc.names = {"a", "b"};
  doc.dropped = {2};
  doc.combinations.push_back({"0-0", {0, 0}, {0, 1}, 1, false});
  StoredSolution s;
  s.combination = "0-0";
  s.tree = tree({{"root", "0:1"}, {"0:1", "1:1"}});
  UsageMatrix u(1, s.tree.vertices());
  u(0, 0) = q("0.2");
  u(0, 1) = q("1/3");
  u(0, 2) = q("7/15");
  s.usage = u;
  doc.solutions.push_back(s);
  const auto text = write_solutions_json(doc);
  const auto back = parse_solutions_json(text);
  EXPECT_EQ(back.mode, "exact");
  EXPECT_EQ(back.names, doc.names);
  EXPECT_EQ(back.dropped, doc.dropped);
  ASSERT_EQ(back.solutions.size(), 1u);
  EXPECT_EQ(back.solutions[0].tree, s.tree);
  EXPECT_EQ(*back.solutions[0].usage, u);
  EXPECT_EQ(write_solutions_json(back), text);
}
