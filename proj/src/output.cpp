// Copyright 2026 The transmon-drag Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "transmon/output.hpp"

#include <openssl/evp.h>
#include <unistd.h>

#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <memory>

#include "transmon/units.hpp"

namespace transmon {
namespace fs = std::filesystem;

std::string sha256_hex(std::string_view data) {
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int len = 0;
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1 ||
      EVP_DigestUpdate(ctx.get(), data.data(), data.size()) != 1 ||
      EVP_DigestFinal_ex(ctx.get(), digest.data(), &len) != 1) {
    throw IoError("SHA-256 computation failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(kHex[digest[i] >> 4]);
    out.push_back(kHex[digest[i] & 0xf]);
  }
  return out;
}

void write_atomic(const fs::path& path, std::string_view contents) {
  std::error_code ec;
  if (path.has_parent_path()) {
    fs::create_directories(path.parent_path(), ec);
    if (ec) throw IoError("cannot create " + path.parent_path().string() + ": " + ec.message());
  }
  fs::path tmp = path;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + tmp.string() + " for writing");
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    out.flush();
    if (!out) {
      out.close();
      fs::remove(tmp, ec);
      throw IoError("write to " + tmp.string() + " failed");
    }
  }
  fs::rename(tmp, path, ec);
  if (ec) {
    std::error_code ignored;
    fs::remove(tmp, ignored);
    throw IoError("cannot move " + tmp.string() + " to " + path.string() + ": " + ec.message());
  }
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  std::array<char, 32> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), res.ptr);
}

CsvWriter::CsvWriter(std::vector<std::string> header) : header_(std::move(header)) {
  for (std::size_t i = 0; i < header_.size(); ++i) {
    body_ += (i ? "," : "") + header_[i];
  }
  body_ += '\n';
}

void CsvWriter::comment(std::string line) { comments_.push_back(std::move(line)); }

void CsvWriter::row(const std::vector<std::string>& cells) {
  if (cells.size() != header_.size()) {
    throw ValidationError("CSV row has " + std::to_string(cells.size()) + " cells, expected " +
                          std::to_string(header_.size()));
  }
  for (std::size_t i = 0; i < cells.size(); ++i) {
    body_ += (i ? "," : "") + cells[i];
  }
  body_ += '\n';
}

void CsvWriter::row(const std::vector<double>& cells) {
  std::vector<std::string> text;
  text.reserve(cells.size());
  for (double v : cells) text.push_back(format_number(v));
  row(text);
}

std::string CsvWriter::render(const nlohmann::json& config) const {
  const std::string config_line = config.dump();
  std::string rest;
  for (const auto& c : comments_) rest += "# " + c + "\n";
  rest += body_;
  return "# config: " + config_line + "\n# content_sha256: " +
         sha256_hex(config_line + "\n" + rest) + "\n" + rest;
}

void CsvWriter::write(const fs::path& path, const nlohmann::json& config) const {
  write_atomic(path, render(config));
}

std::string render_report(const nlohmann::json& config, const nlohmann::json& result) {
  nlohmann::json doc;
  doc["config"] = config;
  doc["content_sha256"] = sha256_hex(config.dump() + "\n" + result.dump());
  doc["result"] = result;
  return doc.dump(2) + "\n";
}

void write_report(const fs::path& path, const nlohmann::json& config, const nlohmann::json& result) {
  write_atomic(path, render_report(config, result));
}

}  // namespace transmon
