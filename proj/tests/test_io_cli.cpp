#include <gtest/gtest.h>

#include <sstream>
#include <string>
#include <vector>

#include "floerss/cli.hpp"

using namespace floerss;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "floerss");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string sample(const std::string& name) { return std::string(FLOERSS_SAMPLES_DIR) + "/" + name; }

}  // namespace

TEST(Io, RingRoundTrip) {
  for (const auto& r : {build_exterior(3), build_truncated_poly(4), tensor_product(*build_exterior(1), *build_sphere(2))}) {
    const auto j = io::ring_to_json(*r);
    const auto back = io::ring_from_json(io::parse_text(j.dump(), "ring"));
    EXPECT_EQ(back->basis(), r->basis());
    EXPECT_EQ(io::ring_to_json(*back), j);
  }
}

TEST(Io, ComplexRoundTrip) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto g = generate_product_complex(seed, 2 + static_cast<int>(seed % 2));
    const auto j = io::complex_to_json(g.complex);
    const auto back = io::complex_from_json(io::parse_text(j.dump(), "complex"));
    EXPECT_EQ(back.operators(), g.complex.operators());
    EXPECT_EQ(io::complex_to_json(back), j);
  }
}

TEST(Io, LoopRoundTrip) {
  const auto loop = rotation_loop({1, -1, 2}, 32);
  const auto back = io::loop_from_json(io::parse_text(io::loop_to_json(loop).dump(), "loop"));
  ASSERT_EQ(back.samples.size(), loop.samples.size());
  for (std::size_t i = 0; i < loop.samples.size(); ++i) EXPECT_EQ(back.samples[i], loop.samples[i]);
}

TEST(Io, ParseErrors) {
  auto code = [](auto&& f) {
    try {
      f();
    } catch (const Error& e) {
      return e.code();
    }
    return Errc::InvalidArgument;
  };
  EXPECT_EQ(code([] { io::parse_text("{", "x"); }), Errc::ParseError);
  EXPECT_EQ(code([] { io::ring_from_json(io::json{{"basis", 3}}); }), Errc::ParseError);
  EXPECT_EQ(code([] { io::complex_from_json(io::parse_text(R"({"dimL":1,"NL":2,"generators":[{"name":"a","index":0}],"operators":{"0":[[0,5]]}})", "c")); }),
            Errc::ParseError);
  EXPECT_EQ(code([] { io::loop_from_json(io::json{{"n", 2}, {"samples", {{{1, 0}}}}}); }), Errc::ParseError);
}

TEST(Cli, RingCommand) {
  auto r = run({"ring", "torus", "--n", "2"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(io::parse_text(r.out, "out")["basis"].size(), 4u);
  r = run({"ring", "rp", "--n", "3"});
  EXPECT_EQ(r.code, 0);
  const auto j = io::parse_text(r.out, "out");
  ASSERT_EQ(j["basis"].size(), 4u);
  for (int d = 0; d < 4; ++d) EXPECT_EQ(j["basis"][static_cast<std::size_t>(d)]["degree"], d);
  r = run({"ring", "torus", "--n", "99"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("SizeLimit"), std::string::npos);
  EXPECT_EQ(run({"ring", "torus", "--n", "2", "--unknown"}).code, 2);
}

TEST(Cli, SpectralRun) {
  auto r = run({"ss", "run", sample("t2_displaceable.json"), "--paranoid"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = io::parse_text(r.out, "out");
  EXPECT_EQ(j["pages"].size(), 3u);
  EXPECT_EQ(j["einf"], (std::vector<int>{0, 0, 0}));
  EXPECT_TRUE(j["convergence"]["ok"].get<bool>());
  r = run({"ss", "run", sample("t2_corrupted.json")});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("x1x2"), std::string::npos);
  r = run({"ss", "run", sample("morse_only.json")});
  const auto m = io::parse_text(r.out, "out");
  EXPECT_EQ(m["pages"][1]["V"], m["pages"].back()["V"]);
  EXPECT_EQ(m["einf"], (std::vector<int>{1, 0, 0, 1}));
  EXPECT_EQ(run({"ss", "run", "/nonexistent.json"}).code, 2);
}

TEST(Cli, AudinCommands) {
  auto r = run({"audin", "torus", "--n", "3", "--maslov", "4", "--displaceable"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(io::parse_text(r.out, "out")["verdict"], "contradiction");
  r = run({"audin", "torus", "--n", "2", "--maslov", "2", "--displaceable"});
  EXPECT_EQ(r.code, 1);
  EXPECT_TRUE(io::parse_text(r.out, "out").contains("witness"));
  r = run({"audin", "torus", "--n", "3", "--maslov", "3", "--displaceable"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(io::parse_text(r.out, "out")["warnings"].size(), 1u);
  EXPECT_EQ(run({"audin", "disc", "--n", "3"}).code, 0);
  EXPECT_EQ(run({"audin", "ring", sample("ring_rp4.json"), "--maslov", "3", "--displaceable"}).code, 0);
  EXPECT_EQ(run({"rp", "--n", "5", "--maslov", "3"}).code, 0);
  EXPECT_EQ(run({"rp", "--n", "4", "--maslov", "2"}).code, 2);
}

TEST(Cli, MaslovCommands) {
  auto r = run({"maslov", "index", sample("rotating_line_256.json"), "--format", "table"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out.substr(0, 2), "1\n");
  r = run({"maslov", "index", sample("constant_loop.json")});
  EXPECT_EQ(io::parse_text(r.out, "out")["index"], 0);
  EXPECT_EQ(run({"maslov", "index", sample("rotating_line_coarse_4.json")}).code, 3);
  EXPECT_EQ(run({"maslov", "index", sample("rotating_line_256.json"), "--samples", "64"}).code, 0);
  EXPECT_EQ(run({"maslov", "index", sample("rotating_line_256.json"), "--samples", "4"}).code, 3);
}

TEST(Cli, CorpusAndDeterminism) {
  auto a = run({"corpus", "--seed", "42", "--count", "100", "--format", "table"});
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, "100/100 pass\n");
  EXPECT_EQ(run({"corpus", "--seed", "3", "--count", "0"}).code, 0);
  const std::vector<std::vector<std::string>> cmds{
      {"corpus", "--seed", "7", "--count", "12"},
      {"derivations", "enumerate", "torus", "--n", "3", "--shift", "-1"},
      {"audin", "torus", "--n", "4", "--maslov", "2", "--displaceable"},
      {"maslov", "index", sample("rotating_line_256.json")},
  };
  for (const auto& c : cmds) {
    const auto x = run(c), y = run(c);
    EXPECT_EQ(x.code, y.code);
    EXPECT_EQ(x.out, y.out);
  }
}
