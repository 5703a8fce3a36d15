#include "seqmc/samplers.hpp"

#include <cctype>
#include <istream>

namespace seqmc {

namespace {

// Returns 0/1 for a bit line, -1 for a blank line; throws on anything else.
int parse_bit_line(const std::string& raw, std::int64_t line_no) {
  std::size_t b = 0, e = raw.size();
  while (b < e && std::isspace(static_cast<unsigned char>(raw[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(raw[e - 1]))) --e;
  if (b == e) return -1;
  if (e - b == 1 && (raw[b] == '0' || raw[b] == '1')) return raw[b] - '0';
  throw SamplerError("bit stream: line " + std::to_string(line_no) + " is not 0 or 1: '" +
                     raw.substr(b, e - b) + "'");
}

}  // namespace

BernoulliSampler::BernoulliSampler(double p, std::uint64_t seed) : p_(p), rng_(seed) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("BernoulliSampler: p outside [0, 1]");
}

std::optional<bool> TextBitSampler::next() {
  std::string line;
  while (std::getline(in_, line)) {
    ++line_;
    const int bit = parse_bit_line(line, line_);
    if (bit >= 0) return bit == 1;
  }
  if (in_.bad()) throw SamplerError("bit stream: read error after line " + std::to_string(line_));
  return std::nullopt;
}

CommandSampler::CommandSampler(const std::string& command) : command_(command) {
  pipe_ = ::popen(command.c_str(), "r");
  if (!pipe_) throw SamplerError("cannot start command: " + command);
}

CommandSampler::~CommandSampler() {
  if (pipe_) ::pclose(pipe_);
}

std::optional<bool> CommandSampler::next() {
  if (!pipe_) return std::nullopt;
  std::string line;
  for (;;) {
    line.clear();
    int c;
    while ((c = std::fgetc(pipe_)) != EOF && c != '\n') line.push_back(static_cast<char>(c));
    if (c == EOF && line.empty()) {
      if (std::ferror(pipe_)) throw SamplerError("read error from command: " + command_);
      const int status = ::pclose(pipe_);
      pipe_ = nullptr;
      if (status != 0)
        throw SamplerError("command exited with status " + std::to_string(status) + ": " + command_);
      return std::nullopt;
    }
    ++line_;
    const int bit = parse_bit_line(line, line_);
    if (bit >= 0) return bit == 1;
  }
}

IndexedSampler::IndexedSampler(Generator gen, unsigned threads, std::size_t block)
    : gen_(std::move(gen)), threads_(threads == 0 ? 1 : threads), block_(block == 0 ? 1 : block) {}

IndexedSampler::~IndexedSampler() {
  for (auto& f : pending_)
    if (f.valid()) f.wait();
}

void IndexedSampler::schedule() {
  while (pending_.size() < threads_) {
    const std::uint64_t start = next_block_start_;
    next_block_start_ += block_;
    auto work = [gen = gen_, start, n = block_] {
      std::vector<char> out(n);
      for (std::size_t i = 0; i < n; ++i) out[i] = gen(start + i) ? 1 : 0;
      return out;
    };
    pending_.push_back(std::async(threads_ > 1 ? std::launch::async : std::launch::deferred, work));
  }
}

std::optional<bool> IndexedSampler::next() {
  if (pos_ == current_.size()) {
    schedule();
    try {
      current_ = pending_.front().get();
    } catch (const std::exception& e) {
      pending_.pop_front();
      throw SamplerError(std::string("sample generation failed: ") + e.what());
    }
    pending_.pop_front();
    pos_ = 0;
  }
  ++next_index_;
  return current_[pos_++] != 0;
}

}  // namespace seqmc
