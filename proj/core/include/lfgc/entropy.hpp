// Copyright 2026 The lfgc Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef LFGC_ENTROPY_HPP
#define LFGC_ENTROPY_HPP

#include <cstddef>
#include <cstdint>
#include <vector>

namespace lfgc {

/// Adaptive probability of the next bit being 0, in 1/65536 units.
class BitModel {
 public:
  uint16_t probability() const { return p_; }

  void update(int bit) {
    if (bit) {
      p_ -= p_ >> kRate;
    } else {
      p_ += static_cast<uint16_t>((kOne - p_) >> kRate);
    }
  }

  static constexpr uint32_t kOne = 1u << 16;
  static constexpr int kRate = 5;

 private:
  uint16_t p_ = 1u << 15;
};

/// Binary range coder with carry propagation through a cached byte. The
/// stream always starts with a zero byte and ends with a five-byte flush.
class RangeEncoder {
 public:
  explicit RangeEncoder(std::vector<uint8_t>& out) : out_(out) {}

  void encode_bit(BitModel& model, int bit);
  // Terminates the stream; no further bits may be encoded.
  void finish();

 private:
  void shift_low();

  std::vector<uint8_t>& out_;
  uint64_t low_ = 0;
  uint32_t range_ = 0xFFFFFFFFu;
  uint8_t cache_ = 0;
  uint64_t cache_size_ = 1;
};

class RangeDecoder {
 public:
  // The buffer must outlive the decoder.
  RangeDecoder(const uint8_t* data, size_t size);

  int decode_bit(BitModel& model);

  // Bytes consumed from the buffer so far.
  size_t offset() const { return pos_; }

 private:
  uint8_t next_byte();

  const uint8_t* data_;
  size_t size_;
  size_t pos_ = 0;
  uint32_t range_ = 0xFFFFFFFFu;
  uint32_t code_ = 0;
};

/// Signed-to-unsigned zigzag: 0,-1,1,-2,2,... -> 0,1,2,3,4,...
uint64_t zigzag_encode(int64_t value);
int64_t zigzag_decode(uint64_t value);

/// Exp-Golomb order 0 over adaptive bit models, one model per bin position
/// capped at kEgContexts. `models` must hold at least kEgContexts entries.
inline constexpr int kEgContexts = 16;
void encode_eg0(RangeEncoder& rc, std::vector<BitModel>& models, uint64_t value);
uint64_t decode_eg0(RangeDecoder& rc, std::vector<BitModel>& models);

/// Self-contained coding of a level sequence (zigzag + Exp-Golomb with the
/// positional contexts above). Decoding needs the element count.
std::vector<uint8_t> entropy_encode(const std::vector<int64_t>& levels);
std::vector<int64_t> entropy_decode(const std::vector<uint8_t>& bytes,
                                    size_t count);

}  // namespace lfgc

#endif
