#pragma once

// Prediction dump readers (NPY v1.0, JSONL, CSV) and the NPY writer.
//
// NPY: magic "\x93NUMPY", version 1.0, little-endian u16 header length, a
// Python-literal header dict with descr in {'<f4','<f8'}, fortran_order False
// and a rank-3 shape (instances, samples, classes). Rank 2 is read as a single
// instance. float32 payloads are widened to double on read.
//
// JSONL: one instance per line,
//   {"id": "...", "probs": [[p0, ..., pC-1], ...], "label": 3}
// with "label" optional. A first line of the form {"meta": {...}} is accepted
// and returned as metadata. Samples per instance may vary.
//
// CSV: header instance_id,sample_idx,label,p0,...,p{C-1}; rows of the same
// instance_id are grouped in order of first appearance and sample_idx must
// cover 0..N-1 exactly. label may be empty.

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "credal/types.hpp"

namespace credal::io {

enum class Dtype { F32, F64 };

struct NpyArray {
  std::vector<double> data;
  std::vector<std::size_t> shape;
  Dtype dtype = Dtype::F64;
  std::size_t payload_offset = 0;  // byte offset of the first element
};

NpyArray parse_npy(std::span<const unsigned char> bytes);
NpyArray read_npy(const std::filesystem::path& path);

/// Serialized NPY v1.0 bytes, C order, header padded to a 64-byte boundary.
std::vector<unsigned char> encode_npy(std::span<const double> data,
                                      std::span<const std::size_t> shape, Dtype dtype = Dtype::F64);
void write_npy(const std::filesystem::path& path, std::span<const double> data,
               std::span<const std::size_t> shape, Dtype dtype = Dtype::F64);

/// 1-D integer array ('<i4' or '<i8') of class labels.
std::vector<std::size_t> read_npy_labels(const std::filesystem::path& path);
void write_npy_labels(const std::filesystem::path& path, std::span<const std::size_t> labels);

/// Splits a rank-3 (or rank-2) array into validated prediction sets.
LabeledBatch batch_from_npy(const NpyArray& array, double tolerance = kIngestTolerance);

struct PredictionFile {
  LabeledBatch batch;
  std::string format;  // "npy", "jsonl" or "csv"
  Dtype dtype = Dtype::F64;
  std::string metadata_json;  // raw "meta" object from JSONL, empty otherwise
};

PredictionFile read_jsonl(const std::filesystem::path& path, double tolerance = kIngestTolerance);
PredictionFile parse_jsonl(const std::string& text, double tolerance = kIngestTolerance);
PredictionFile read_csv(const std::filesystem::path& path, double tolerance = kIngestTolerance);
PredictionFile parse_csv(const std::string& text, double tolerance = kIngestTolerance);

/// Dispatches on extension: .npy, .jsonl/.json, .csv.
PredictionFile read_predictions(const std::filesystem::path& path,
                                double tolerance = kIngestTolerance);

void write_jsonl(const std::filesystem::path& path, const LabeledBatch& batch,
                 const std::string& metadata_json = {});

std::string read_text(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace credal::io
