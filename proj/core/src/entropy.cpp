// Copyright 2026 The lfgc Authors
// SPDX-License-Identifier: Apache-2.0

#include "lfgc/entropy.hpp"

#include <algorithm>
#include <bit>
#include <string>

#include "lfgc/errors.hpp"

namespace lfgc {

namespace {
constexpr uint32_t kTopValue = 1u << 24;
}

void RangeEncoder::encode_bit(BitModel& model, int bit) {
  const uint32_t bound = (range_ >> 16) * model.probability();
  if (bit) {
    low_ += bound;
    range_ -= bound;
  } else {
    range_ = bound;
  }
  model.update(bit);
  while (range_ < kTopValue) {
    shift_low();
    range_ <<= 8;
  }
}

void RangeEncoder::shift_low() {
  if (static_cast<uint32_t>(low_) < 0xFF000000u || (low_ >> 32) != 0) {
    const uint8_t carry = static_cast<uint8_t>(low_ >> 32);
    do {
      out_.push_back(static_cast<uint8_t>(cache_ + carry));
      cache_ = 0xFF;
    } while (--cache_size_ != 0);
    cache_ = static_cast<uint8_t>(low_ >> 24);
  }
  ++cache_size_;
  low_ = (low_ << 8) & 0xFFFFFFFFu;
}

void RangeEncoder::finish() {
  for (int i = 0; i < 5; ++i) shift_low();
}

RangeDecoder::RangeDecoder(const uint8_t* data, size_t size)
    : data_(data), size_(size) {
  next_byte();  // the leading zero byte carries no information
  for (int i = 0; i < 4; ++i) code_ = (code_ << 8) | next_byte();
}

uint8_t RangeDecoder::next_byte() {
  if (pos_ >= size_) {
    throw DataError("malformed stream at offset " + std::to_string(pos_));
  }
  return data_[pos_++];
}

int RangeDecoder::decode_bit(BitModel& model) {
  const uint32_t bound = (range_ >> 16) * model.probability();
  int bit;
  if (code_ < bound) {
    range_ = bound;
    bit = 0;
  } else {
    code_ -= bound;
    range_ -= bound;
    bit = 1;
  }
  model.update(bit);
  while (range_ < kTopValue) {
    range_ <<= 8;
    code_ = (code_ << 8) | next_byte();
  }
  return bit;
}

uint64_t zigzag_encode(int64_t value) {
  return (static_cast<uint64_t>(value) << 1) ^
         static_cast<uint64_t>(value >> 63);
}

int64_t zigzag_decode(uint64_t value) {
  return static_cast<int64_t>(value >> 1) ^ -static_cast<int64_t>(value & 1);
}

void encode_eg0(RangeEncoder& rc, std::vector<BitModel>& models,
                uint64_t value) {
  const uint64_t vp1 = value + 1;
  const int n_bits = std::bit_width(vp1);
  int pos = 0;
  auto ctx = [&]() -> BitModel& {
    return models[static_cast<size_t>(std::min(pos++, kEgContexts - 1))];
  };
  for (int i = 0; i < n_bits - 1; ++i) rc.encode_bit(ctx(), 1);
  rc.encode_bit(ctx(), 0);
  for (int i = n_bits - 2; i >= 0; --i) {
    rc.encode_bit(ctx(), static_cast<int>((vp1 >> i) & 1));
  }
}

uint64_t decode_eg0(RangeDecoder& rc, std::vector<BitModel>& models) {
  int pos = 0;
  auto ctx = [&]() -> BitModel& {
    return models[static_cast<size_t>(std::min(pos++, kEgContexts - 1))];
  };
  int n_bits = 1;
  while (rc.decode_bit(ctx())) {
    if (++n_bits > 63) {
      throw DataError("malformed stream at offset " +
                      std::to_string(rc.offset()));
    }
  }
  uint64_t vp1 = 1;
  for (int i = 0; i < n_bits - 1; ++i) {
    vp1 = (vp1 << 1) | static_cast<uint64_t>(rc.decode_bit(ctx()));
  }
  return vp1 - 1;
}

std::vector<uint8_t> entropy_encode(const std::vector<int64_t>& levels) {
  std::vector<uint8_t> out;
  RangeEncoder rc(out);
  std::vector<BitModel> models(kEgContexts);
  for (int64_t level : levels) {
    encode_eg0(rc, models, zigzag_encode(level));
  }
  rc.finish();
  return out;
}

std::vector<int64_t> entropy_decode(const std::vector<uint8_t>& bytes,
                                    size_t count) {
  std::vector<int64_t> levels;
  levels.reserve(count);
  if (count == 0) return levels;
  RangeDecoder rc(bytes.data(), bytes.size());
  std::vector<BitModel> models(kEgContexts);
  for (size_t i = 0; i < count; ++i) {
    levels.push_back(zigzag_decode(decode_eg0(rc, models)));
  }
  return levels;
}

}  // namespace lfgc
