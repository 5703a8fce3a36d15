#pragma once

#include <cstdint>
#include <cstdio>
#include <deque>
#include <functional>
#include <future>
#include <iosfwd>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "seqmc/rng.hpp"

namespace seqmc {

class SamplerError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Pull-based stream of Bernoulli draws. An empty optional marks the end of a
// finite stream; failures are reported by throwing SamplerError.
class BitSampler {
 public:
  virtual ~BitSampler() = default;
  virtual std::optional<bool> next() = 0;
};

// Seeded Bernoulli(p) draws.
class BernoulliSampler final : public BitSampler {
 public:
  BernoulliSampler(double p, std::uint64_t seed);
  std::optional<bool> next() override { return rng_.bernoulli(p_); }

 private:
  double p_;
  Rng rng_;
};

// One 0/1 per line; surrounding whitespace and blank lines are ignored.
class TextBitSampler final : public BitSampler {
 public:
  explicit TextBitSampler(std::istream& in) : in_(in) {}
  std::optional<bool> next() override;

 private:
  std::istream& in_;
  std::int64_t line_ = 0;
};

class CallbackSampler final : public BitSampler {
 public:
  explicit CallbackSampler(std::function<bool()> fn) : fn_(std::move(fn)) {}
  std::optional<bool> next() override { return fn_(); }

 private:
  std::function<bool()> fn_;
};

// Runs a shell command and reads its stdout in the text bit format.
class CommandSampler final : public BitSampler {
 public:
  explicit CommandSampler(const std::string& command);
  ~CommandSampler() override;
  CommandSampler(const CommandSampler&) = delete;
  CommandSampler& operator=(const CommandSampler&) = delete;
  std::optional<bool> next() override;

 private:
  FILE* pipe_ = nullptr;
  std::string command_;
  std::int64_t line_ = 0;
};

// Draw i is a pure function of its index. Blocks of draws are produced on a
// worker pool ahead of consumption but always handed out in index order, so
// the stream is identical for any thread count.
class IndexedSampler final : public BitSampler {
 public:
  using Generator = std::function<bool(std::uint64_t index)>;

  IndexedSampler(Generator gen, unsigned threads = 1, std::size_t block = 256);
  ~IndexedSampler() override;
  std::optional<bool> next() override;
  std::uint64_t produced() const { return next_index_; }

 private:
  void schedule();

  Generator gen_;
  unsigned threads_;
  std::size_t block_;
  std::uint64_t next_block_start_ = 0;
  std::uint64_t next_index_ = 0;
  std::deque<std::future<std::vector<char>>> pending_;
  std::vector<char> current_;
  std::size_t pos_ = 0;
};

// Counts every draw pulled through it.
class CountingSampler final : public BitSampler {
 public:
  CountingSampler(BitSampler& inner, std::int64_t& counter) : inner_(inner), counter_(counter) {}
  std::optional<bool> next() override {
    auto v = inner_.next();
    if (v) ++counter_;
    return v;
  }

 private:
  BitSampler& inner_;
  std::int64_t& counter_;
};

}  // namespace seqmc
