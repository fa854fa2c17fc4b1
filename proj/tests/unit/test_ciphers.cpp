#include <gtest/gtest.h>

#include <algorithm>
#include <array>
#include <random>

#include "test_support.hpp"
#include "vsem/ciphers.hpp"

namespace {

using vsem::Bytes;
using vsem::ChainSpec;
using vsem::Stage;
using vsem::XorShift;
using vsem::testing::random_bytes;
using vsem::testing::random_password;

constexpr std::array<std::size_t, 9> kLengths{0, 1, 2, 3, 255, 256, 257, 4095, 1048576};

TEST(XorStream, Involution) {
  std::mt19937_64 rng(1);
  for (std::size_t len : {0, 1, 17, 1000}) {
    const Bytes b = random_bytes(rng, len);
    const std::uint64_t seed = rng();
    EXPECT_EQ(vsem::xor_stream(vsem::xor_stream(b, seed), seed), b);
  }
}

TEST(XorStream, ZeroPlaintextYieldsKeystream) {
  const Bytes out = vsem::xor_stream(Bytes(4, 0), 1);
  EXPECT_EQ(out, (Bytes{65, 65, 41, 37}));
  XorShift g(1, 1);
  for (std::uint8_t b : out) EXPECT_EQ(b, static_cast<std::uint8_t>(g.next()));
}

TEST(XorStream, Empty) { EXPECT_TRUE(vsem::xor_stream(Bytes{}, 5).empty()); }

TEST(XorStream, NoDiffusion) {
  std::mt19937_64 rng(9);
  Bytes b = random_bytes(rng, 512);
  const Bytes c1 = vsem::encrypt_pipeline(b, "pw", ChainSpec::only(Stage::Xor));
  b[100] ^= 0x40;
  const Bytes c2 = vsem::encrypt_pipeline(b, "pw", ChainSpec::only(Stage::Xor));
  std::size_t diff = 0;
  for (std::size_t i = 0; i < c1.size(); ++i) diff += c1[i] != c2[i];
  EXPECT_EQ(diff, 1U);
}

TEST(SwapTranspose, SingleByteUnchanged) {
  XorShift g(3, 1);
  Bytes b{42};
  vsem::swap_transpose(b, g);
  EXPECT_EQ(b, Bytes{42});
  EXPECT_EQ(g.draws(), 0U);
}

TEST(SwapTranspose, FrozenSmallTraces) {
  // tests/oracle/vsem_oracle.py
  EXPECT_EQ(vsem::swap_transpose(Bytes{0, 1, 2, 3}, 1), (Bytes{1, 0, 3, 2}));
  EXPECT_EQ(vsem::swap_transpose(Bytes{0, 1, 2, 3, 4, 5, 6, 7, 8, 9}, 7),
            (Bytes{1, 0, 3, 2, 7, 6, 5, 4, 9, 8}));
}

TEST(SwapTranspose, FourByteTraceByHand) {
  // i=0 draws ip in [1,3]; i=1 is then either taken (ip==1) or draws in [2,3].
  XorShift g(3, 1);
  const std::uint64_t d0 = g.next();
  const std::size_t ip0 = 1 + d0 % 3;
  ASSERT_EQ(ip0, 1U);  // 0x8008001001 mod 3 == 0
  // Position 1 taken, i=2 draws ip in [3,3].
  Bytes expect{1, 0, 3, 2};
  XorShift run(3, 1);
  Bytes b{0, 1, 2, 3};
  vsem::swap_transpose(b, run);
  EXPECT_EQ(b, expect);
  EXPECT_EQ(run.draws(), 2U);
}

TEST(SwapTranspose, PermutationAndInvolution) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 500; ++trial) {
    const Bytes b = random_bytes(rng, rng() % 3000);
    const std::uint64_t seed = rng();
    const Bytes once = vsem::swap_transpose(b, seed);
    Bytes sorted_in = b;
    Bytes sorted_out = once;
    std::sort(sorted_in.begin(), sorted_in.end());
    std::sort(sorted_out.begin(), sorted_out.end());
    ASSERT_EQ(sorted_in, sorted_out);
    ASSERT_EQ(vsem::swap_transpose(once, seed), b);
  }
}

TEST(SwapTranspose, DrawCountDependsOnlyOnSeedAndLength) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t len = rng() % 5000;
    const std::uint64_t seed = rng();
    Bytes a = random_bytes(rng, len);
    Bytes c = random_bytes(rng, len);
    XorShift ga(3, seed);
    XorShift gc(3, seed);
    vsem::swap_transpose(a, ga);
    vsem::swap_transpose(c, gc);
    ASSERT_EQ(ga.draws(), gc.draws());
    XorShift gd(3, seed);
    vsem::swap_transpose(a, gd);  // decryption pass
    ASSERT_EQ(ga.draws(), gd.draws());
    ASSERT_EQ(ga.state(), gd.state());
  }
}

TEST(SwapTranspose, MovesMostBytesOfLargeBuffers) {
  std::mt19937_64 rng(13);
  const Bytes b = random_bytes(rng, 1 << 16);
  const Bytes out = vsem::swap_transpose(b, 0xABCDEF);
  std::size_t unchanged = 0;
  for (std::size_t i = 0; i < b.size(); ++i) unchanged += out[i] == b[i];
  // A moved byte still matches with probability 1/256.
  EXPECT_LT(unchanged, b.size() / 50);
}

TEST(Shift, RotateRightThenXor) {
  // One byte with j=1, jj=0: 0b10000001 -> 0b11000000.
  EXPECT_EQ(std::rotr(static_cast<std::uint8_t>(0b10000001), 1), 0b11000000);
  // Consecutive draws are correlated (jj == 0 forces an even j), so the two
  // halves are checked with separate seeds.
  std::mt19937_64 rng(21);
  bool saw_zero_mask = false;
  bool saw_rot_one = false;
  for (int attempt = 0; attempt < 200000 && !(saw_zero_mask && saw_rot_one); ++attempt) {
    const std::uint64_t seed = rng();
    XorShift g(1, seed);
    const auto jj = static_cast<std::uint8_t>(vsem::draw_range(g, 0, 255));
    const auto j = static_cast<int>(vsem::draw_range(g, 0, 7));
    const Bytes out = vsem::shift_encrypt(Bytes{0b10000001}, seed);
    if (jj == 0) {
      saw_zero_mask = true;
      EXPECT_EQ(out[0], std::rotr(static_cast<std::uint8_t>(0b10000001), j));
    }
    if (j == 1) {
      saw_rot_one = true;
      EXPECT_EQ(out[0], static_cast<std::uint8_t>(0b11000000 ^ jj));
    }
  }
  EXPECT_TRUE(saw_zero_mask);
  EXPECT_TRUE(saw_rot_one);
}

TEST(Shift, SingleByteSeedOne) {
  // First two draws of variant 1 from seed 1: jj = 0x40822041 % 256 = 65,
  // j = 0x100041060C011441 % 8 = 1. rotr(0x5A, 1) = 0x2D, 0x2D ^ 65 = 108.
  XorShift g(1, 1);
  EXPECT_EQ(vsem::draw_range(g, 0, 255), 65);
  EXPECT_EQ(vsem::draw_range(g, 0, 7), 1);
  EXPECT_EQ(vsem::shift_encrypt(Bytes{0x5A}, 1), Bytes{108});
  EXPECT_EQ(vsem::shift_decrypt(Bytes{108}, 1), Bytes{0x5A});
}

TEST(Shift, DecryptInvertsEncrypt) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const Bytes b = random_bytes(rng, rng() % 1000);
    const std::uint64_t seed = rng();
    ASSERT_EQ(vsem::shift_decrypt(vsem::shift_encrypt(b, seed), seed), b);
  }
}

TEST(Circular, RotationDirection) {
  // Pre-XOR layout for j1 = 1 must be [30, 10, 20].
  std::mt19937_64 rng(22);
  for (int attempt = 0; attempt < 1000; ++attempt) {
    const std::uint64_t seed = rng();
    XorShift g(3, seed);
    if (vsem::draw_range(g, 0, 2) != 1) continue;
    std::array<std::uint8_t, 3> key{};
    for (auto& k : key) k = static_cast<std::uint8_t>(vsem::draw_range(g, 0, 255));
    const Bytes out = vsem::circular_encrypt(Bytes{10, 20, 30}, seed);
    const Bytes layout{static_cast<std::uint8_t>(out[0] ^ key[0]),
                       static_cast<std::uint8_t>(out[1] ^ key[1]),
                       static_cast<std::uint8_t>(out[2] ^ key[2])};
    EXPECT_EQ(layout, (Bytes{30, 10, 20}));
    return;
  }
  FAIL() << "no seed with j1 = 1";
}

TEST(Circular, FrozenSeedOne) {
  EXPECT_EQ(vsem::circular_encrypt(Bytes{10, 20, 30}, 1), (Bytes{15, 3, 84}));
}

TEST(Circular, SingleByteIsXorWithOneKeyByte) {
  XorShift g(3, 77);
  (void)g.next();  // rotation offset, always 0
  const auto key = static_cast<std::uint8_t>(g.next());
  EXPECT_EQ(vsem::circular_encrypt(Bytes{0x33}, 77), Bytes{static_cast<std::uint8_t>(0x33 ^ key)});
  XorShift counted(3, 77);
  Bytes one{0x33};
  vsem::circular_encrypt(one, counted);
  EXPECT_EQ(counted.draws(), 2U);
}

TEST(Circular, EmptyConsumesNothing) {
  XorShift g(3, 1);
  Bytes empty;
  vsem::circular_encrypt(empty, g);
  vsem::circular_decrypt(empty, g);
  EXPECT_EQ(g.draws(), 0U);
}

TEST(Circular, DecryptInvertsEncrypt) {
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 200; ++trial) {
    const Bytes b = random_bytes(rng, rng() % 1000);
    const std::uint64_t seed = rng();
    ASSERT_EQ(vsem::circular_decrypt(vsem::circular_encrypt(b, seed), seed), b);
  }
}

TEST(ChainSpec, Parse) {
  EXPECT_EQ(ChainSpec::parse("all"), ChainSpec::full());
  EXPECT_EQ(ChainSpec::parse("x").mask(), 0x01);
  EXPECT_EQ(ChainSpec::parse("ct,x").mask(), 0x09);
  EXPECT_EQ(ChainSpec::parse("X,T,S,CT"), ChainSpec::full());
  EXPECT_EQ(ChainSpec::parse("s,t").to_string(), "t,s");
  EXPECT_THROW(ChainSpec::parse("q"), vsem::ConfigError);
  EXPECT_THROW(ChainSpec::parse(""), vsem::ConfigError);
  EXPECT_THROW(ChainSpec(0), vsem::ConfigError);
  EXPECT_THROW(ChainSpec(0x10), vsem::ConfigError);
}

TEST(Pipeline, FrozenFullChainVector) {
  const std::string msg = "hello world";
  const Bytes out = vsem::encrypt_pipeline(Bytes(msg.begin(), msg.end()), "pw", ChainSpec::full());
  EXPECT_EQ(out, (Bytes{150, 255, 47, 224, 193, 57, 175, 158, 131, 18, 164}));
}

TEST(Pipeline, XorOnlyEqualsModuleWithFirstSeed) {
  std::mt19937_64 rng(7);
  const Bytes b = random_bytes(rng, 999);
  const auto seeds = vsem::derive_seeds("secret");
  EXPECT_EQ(vsem::encrypt_pipeline(b, "secret", ChainSpec::only(Stage::Xor)),
            vsem::xor_stream(b, seeds.s1));
  EXPECT_EQ(vsem::decrypt_pipeline(b, "secret", ChainSpec::only(Stage::Xor)),
            vsem::encrypt_pipeline(b, "secret", ChainSpec::only(Stage::Xor)));
}

TEST(Pipeline, StagesComposeInFixedOrder) {
  std::mt19937_64 rng(8);
  const Bytes b = random_bytes(rng, 300);
  const auto s = vsem::derive_seeds("order");
  const Bytes manual = vsem::circular_encrypt(
      vsem::shift_encrypt(vsem::swap_transpose(vsem::xor_stream(b, s.s1), s.s2), s.s3), s.s4);
  EXPECT_EQ(vsem::encrypt_pipeline(b, "order", ChainSpec::full()), manual);
}

TEST(Pipeline, Deterministic) {
  std::mt19937_64 rng(9);
  const Bytes b = random_bytes(rng, 5000);
  EXPECT_EQ(vsem::encrypt_pipeline(b, "pw", ChainSpec::full()),
            vsem::encrypt_pipeline(b, "pw", ChainSpec::full()));
}

TEST(Pipeline, EmptyChainRejected) {
  EXPECT_THROW(ChainSpec::parse(","), vsem::ConfigError);
}

TEST(Pipeline, RoundTripEveryChainAndLength) {
  std::mt19937_64 rng(10);
  for (std::size_t len : kLengths) {
    const int cases = len >= 4095 ? 3 : 20;
    for (int c = 0; c < cases; ++c) {
      const Bytes b = random_bytes(rng, len);
      const std::string pw = random_password(rng);
      const ChainSpec chain(static_cast<std::uint8_t>(1 + rng() % 15));
      const Bytes enc = vsem::encrypt_pipeline(b, pw, chain);
      ASSERT_EQ(enc.size(), b.size());
      ASSERT_EQ(vsem::decrypt_pipeline(enc, pw, chain), b) << "len " << len << " chain "
                                                          << chain.to_string();
    }
  }
}

TEST(Pipeline, BlockedRoundTripAndBlockIndependence) {
  std::mt19937_64 rng(11);
  const Bytes b = random_bytes(rng, 10000);
  const vsem::PipelineOptions blocks{1024};
  const Bytes enc = vsem::encrypt_pipeline(b, "pw", ChainSpec::full(), blocks);
  EXPECT_EQ(vsem::decrypt_pipeline(enc, "pw", ChainSpec::full(), blocks), b);
  EXPECT_NE(enc, vsem::encrypt_pipeline(b, "pw", ChainSpec::full(), {0}));
  // The transposition never crosses a block boundary.
  const Bytes t_only = vsem::encrypt_pipeline(b, "pw", ChainSpec::only(Stage::Transpose), blocks);
  for (std::size_t off = 0; off < b.size(); off += 1024) {
    const std::size_t n = std::min<std::size_t>(1024, b.size() - off);
    Bytes in(b.begin() + off, b.begin() + off + n);
    Bytes out(t_only.begin() + off, t_only.begin() + off + n);
    std::sort(in.begin(), in.end());
    std::sort(out.begin(), out.end());
    ASSERT_EQ(in, out);
  }
  // X keystream continues across blocks, so blocking does not change it.
  EXPECT_EQ(vsem::encrypt_pipeline(b, "pw", ChainSpec::only(Stage::Xor), blocks),
            vsem::encrypt_pipeline(b, "pw", ChainSpec::only(Stage::Xor), {0}));
}

TEST(Pipeline, WrongPasswordDoesNotDecrypt) {
  std::mt19937_64 rng(12);
  for (int i = 0; i < 100; ++i) {
    const Bytes b = random_bytes(rng, 16 + rng() % 200);
    const std::string pw = random_password(rng, 4, 16);
    std::string other = random_password(rng, 4, 16);
    if (other == pw) other += 'x';
    const Bytes enc = vsem::encrypt_pipeline(b, pw, ChainSpec::full());
    ASSERT_NE(vsem::decrypt_pipeline(enc, other, ChainSpec::full()), b);
  }
}

TEST(Pipeline, ZeroPlaintextKeystreamIsFlat) {
  const std::size_t len = std::size_t{1} << 20;
  const Bytes enc = vsem::encrypt_pipeline(Bytes(len, 0), "flat", ChainSpec::full());
  std::array<std::size_t, 256> freq{};
  for (auto v : enc) ++freq[v];
  const double expect = static_cast<double>(len) / 256.0;
  for (auto f : freq) {
    EXPECT_GT(f, expect * 0.8);
    EXPECT_LT(f, expect * 1.2);
  }
}

}  // namespace
