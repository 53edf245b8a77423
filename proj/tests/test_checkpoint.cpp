#include <cstdio>
#include <fstream>
#include <sstream>

#include "doctest_main.hpp"
#include "uts/checkpoint.hpp"

using namespace uts;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  std::ostringstream os;
  os << is.rdbuf();
  return os.str();
}

}  // namespace

TEST_CASE("checkpoint save/load/save is byte-identical") {
  ParamStore ps;
  Rng rng(11);
  ps.add("encoder.lstm_fwd.Wi", Tensor::zeros({4, 6}));
  ps.add("dec.h_c", Tensor::zeros({4}));
  ps.add("embed.E", Tensor::zeros({9, 3}));
  ps.init_uniform(rng, 0.02);
  ps.accumulator("dec.h_c").data.setConstant(0.5);

  std::string p1 = "ckpt_roundtrip_a.uts";
  std::string p2 = "ckpt_roundtrip_b.uts";
  save_checkpoint(ps, p1);
  ParamStore loaded = load_checkpoint(p1);
  save_checkpoint(loaded, p2);

  std::string b1 = slurp(p1), b2 = slurp(p2);
  CHECK(!b1.empty());
  CHECK(b1 == b2);
  CHECK(b1.substr(0, 11) == "UTSCKPT v1\n");

  CHECK(loaded.at("embed.E").shape == std::vector<long>{9, 3});
  CHECK(loaded.accumulator("dec.h_c").data[0] == 0.5);
  for (long i = 0; i < ps.at("embed.E").size(); ++i)
    CHECK(loaded.at("embed.E").data[i] == ps.at("embed.E").data[i]);
  std::remove(p1.c_str());
  std::remove(p2.c_str());
}

TEST_CASE("truncated checkpoint is a data error") {
  ParamStore ps;
  ps.add("w", Tensor::vector({1.0, 2.0, 3.0}));
  std::string p = "ckpt_trunc.uts";
  save_checkpoint(ps, p);
  std::string bytes = slurp(p);
  std::ofstream os(p, std::ios::binary | std::ios::trunc);
  os.write(bytes.data(), static_cast<std::streamsize>(bytes.size() - 10));
  os.close();
  CHECK_THROWS_AS(load_checkpoint(p), DataError);
  std::remove(p.c_str());
}
