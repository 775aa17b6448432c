// Copyright 2026 The morphclass Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "morphclass/container.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "morphclass/compress.hpp"
#include "text_util.hpp"

namespace mc {

Codec parse_codec(std::string_view name) {
  if (name == "raw") return Codec::kRaw;
  if (name == "rle") return Codec::kRle;
  if (name == "tree") return Codec::kTree;
  if (name == "rect") return Codec::kRect;
  throw InputError("unknown codec '" + std::string(name) + "' (expected raw, rle, tree or rect)");
}

const char* codec_name(Codec codec) {
  switch (codec) {
    case Codec::kRaw: return "raw";
    case Codec::kRle: return "rle";
    case Codec::kTree: return "tree";
    case Codec::kRect: return "rect";
  }
  return "raw";
}

namespace {

constexpr std::size_t kMaxLetterLabel = 52;

char label_letter(Label l) {
  return l <= 26 ? static_cast<char>('A' + l - 1) : static_cast<char>('a' + l - 27);
}

int letter_label(char c) {
  if (c >= 'A' && c <= 'Z') return c - 'A' + 1;
  if (c >= 'a' && c <= 'z') return c - 'a' + 27;
  return -1;
}

// Line cursor that remembers byte offsets for error reporting.
class Lines {
 public:
  explicit Lines(std::string_view text) : text_(text) {}

  bool done() const noexcept { return pos_ >= text_.size(); }
  std::size_t offset() const noexcept { return pos_; }

  std::string_view next(const char* what) {
    if (done()) throw FormatError(std::string("missing ") + what, pos_);
    line_start_ = pos_;
    const auto end = text_.find('\n', pos_);
    std::string_view line = end == std::string_view::npos
                                ? text_.substr(pos_)
                                : text_.substr(pos_, end - pos_);
    pos_ = end == std::string_view::npos ? text_.size() : end + 1;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    return line;
  }

  std::size_t line_start() const noexcept { return line_start_; }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_start_ = 0;
};

template <typename T>
T parse_number(std::string_view token, std::size_t at) {
  T value{};
  const auto res = std::from_chars(token.data(), token.data() + token.size(), value);
  if (res.ec != std::errc{} || res.ptr != token.data() + token.size()) {
    throw FormatError("bad number '" + std::string(token) + "'", at);
  }
  return value;
}

// "<key> a b ..." with exactly `n` values.
std::vector<std::string_view> keyed(Lines& lines, const char* key, std::size_t n) {
  const std::string_view line = lines.next(key);
  auto fields = split_ws(line);
  if (fields.size() != n + 1 || fields[0] != key) {
    throw FormatError(std::string("expected '") + key + "' line", lines.line_start());
  }
  fields.erase(fields.begin());
  return fields;
}

}  // namespace

std::string write_model(const LabelGrid& model, Codec codec) {
  const GridSpec& spec = model.spec();
  if (spec.rank() != 2) throw InputError("model container stores 2D grids only");
  const std::size_t L = model.num_classes();
  std::string out = "MCMODEL 1\n";
  out += "dims " + std::to_string(spec.dims[0]) + " " + std::to_string(spec.dims[1]) + "\n";
  out += "origin " + std::to_string(spec.origin[0]) + " " + std::to_string(spec.origin[1]) + "\n";
  out += "precision " + format_double(spec.precision[0]) + " " +
         format_double(spec.precision[1]) + "\n";
  out += "labels " + std::to_string(L) + "\n";
  out += std::string("codec ") + codec_name(codec) + "\n";
  const std::size_t w = model.width();
  switch (codec) {
    case Codec::kRaw:
      for (std::size_t y = 0; y < model.height(); ++y) {
        for (std::size_t x = 0; x < w; ++x) {
          if (x > 0) out += ' ';
          out += std::to_string(model.at(x, y));
        }
        out += '\n';
      }
      break;
    case Codec::kRle: {
      if (L > kMaxLetterLabel) {
        throw InputError("rle codec supports at most 52 labels");
      }
      std::string letters;
      letters.reserve(model.labels().size());
      for (Label l : model.labels()) {
        if (l < 1 || l > L) throw InputError("rle codec needs labels in 1..L");
        letters += label_letter(l);
      }
      out += rle_encode(letters) + "\n";
      break;
    }
    case Codec::kTree:
      out += serialize_tree(build_tree(model), L) + "\n";
      break;
    case Codec::kRect:
      for (const Rect& r : to_rects(model)) {
        out += std::to_string(r.label) + " " + std::to_string(r.corner[0]) + " " +
               std::to_string(r.corner[1]) + " " + std::to_string(r.extent[0]) + " " +
               std::to_string(r.extent[1]) + "\n";
      }
      break;
  }
  return out;
}

namespace {

struct Header {
  GridSpec spec;
  std::size_t num_classes = 0;
  Codec codec = Codec::kRaw;
};

Header read_header(Lines& lines) {
  const std::string_view magic = lines.next("header");
  if (trim(magic) != "MCMODEL 1") throw FormatError("not an MCMODEL 1 container", 0);
  Header h;
  auto dims = keyed(lines, "dims", 2);
  const std::size_t at_dims = lines.line_start();
  auto origin = keyed(lines, "origin", 2);
  const std::size_t at_origin = lines.line_start();
  auto precision = keyed(lines, "precision", 2);
  const std::size_t at_precision = lines.line_start();
  auto labels = keyed(lines, "labels", 1);
  const std::size_t at_labels = lines.line_start();
  auto codec = keyed(lines, "codec", 1);
  const std::size_t at_codec = lines.line_start();
  for (int j = 0; j < 2; ++j) {
    h.spec.dims.push_back(parse_number<std::int64_t>(dims[j], at_dims));
    h.spec.origin.push_back(parse_number<std::int64_t>(origin[j], at_origin));
    h.spec.precision.push_back(parse_number<double>(precision[j], at_precision));
    if (h.spec.dims[j] < 1) throw FormatError("dims must be positive", at_dims);
    if (!(h.spec.precision[j] > 0.0)) throw FormatError("precision must be positive", at_precision);
  }
  if (h.spec.dims[0] * h.spec.dims[1] > (std::int64_t{1} << 30)) {
    throw FormatError("grid too large", at_dims);
  }
  h.num_classes = parse_number<std::size_t>(labels[0], at_labels);
  if (h.num_classes < 1 || h.num_classes > 65535) {
    throw FormatError("label count out of range", at_labels);
  }
  try {
    h.codec = parse_codec(codec[0]);
  } catch (const InputError&) {
    throw FormatError("unknown codec '" + std::string(codec[0]) + "'", at_codec);
  }
  return h;
}

Label checked_label(std::size_t value, std::size_t num_classes, std::size_t at) {
  if (value < 1 || value > num_classes) {
    throw FormatError("label " + std::to_string(value) + " outside 1.." +
                          std::to_string(num_classes),
                      at);
  }
  return static_cast<Label>(value);
}

}  // namespace

Codec model_codec(std::string_view text) {
  Lines lines(text);
  return read_header(lines).codec;
}

LabelGrid read_model(std::string_view text) {
  Lines lines(text);
  const Header h = read_header(lines);
  const auto w = static_cast<std::size_t>(h.spec.dims[0]);
  const auto ht = static_cast<std::size_t>(h.spec.dims[1]);
  const std::size_t L = h.num_classes;
  std::vector<Label> labels;
  switch (h.codec) {
    case Codec::kRaw:
      labels.reserve(w * ht);
      for (std::size_t y = 0; y < ht; ++y) {
        const std::string_view line = lines.next("raw row");
        const auto fields = split_ws(line);
        if (fields.size() != w) {
          throw FormatError("row " + std::to_string(y) + " has " +
                                std::to_string(fields.size()) + " labels, expected " +
                                std::to_string(w),
                            lines.line_start());
        }
        for (auto f : fields) {
          labels.push_back(checked_label(parse_number<std::size_t>(f, lines.line_start()), L,
                                         lines.line_start()));
        }
      }
      break;
    case Codec::kRle: {
      const std::string_view line = lines.next("rle payload");
      const std::size_t base = lines.line_start();
      std::string letters;
      try {
        letters = rle_decode(trim(line));
      } catch (const FormatError& e) {
        throw FormatError("bad rle payload", base + e.position());
      }
      if (letters.size() != w * ht) {
        throw FormatError("rle payload holds " + std::to_string(letters.size()) +
                              " labels, expected " + std::to_string(w * ht),
                          base);
      }
      labels.reserve(letters.size());
      for (char c : letters) {
        const int l = letter_label(c);
        if (l < 0) throw FormatError(std::string("bad rle symbol '") + c + "'", base);
        labels.push_back(checked_label(static_cast<std::size_t>(l), L, base));
      }
      break;
    }
    case Codec::kTree: {
      const std::string_view line = trim(lines.next("tree payload"));
      const std::size_t base = lines.line_start();
      OrthantTree tree;
      try {
        tree = deserialize_tree(line, 2, L, tree_side(h.spec));
      } catch (const FormatError& e) {
        throw FormatError("bad tree payload", base + e.position());
      }
      try {
        return grid_from_tree(tree, h.spec, L);
      } catch (const FormatError&) {
        throw;
      } catch (const InputError& e) {
        throw FormatError(e.what(), base);
      }
    }
    case Codec::kRect: {
      RectSet rects;
      while (!lines.done()) {
        const std::string_view line = lines.next("rectangle");
        if (trim(line).empty()) continue;
        const auto fields = split_ws(line);
        const std::size_t at = lines.line_start();
        if (fields.size() != 5) throw FormatError("expected 'label x y extent_x extent_y'", at);
        Rect r;
        r.label = checked_label(parse_number<std::size_t>(fields[0], at), L, at);
        r.corner = {parse_number<std::int64_t>(fields[1], at),
                    parse_number<std::int64_t>(fields[2], at)};
        r.extent = {parse_number<std::int64_t>(fields[3], at),
                    parse_number<std::int64_t>(fields[4], at)};
        rects.push_back(std::move(r));
      }
      try {
        return from_rects(rects, h.spec, L);
      } catch (const FormatError&) {
        throw;
      } catch (const InputError& e) {
        throw FormatError(e.what(), lines.offset());
      }
    }
  }
  return LabelGrid(h.spec, L, std::move(labels));
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path + "'");
  out << text;
  if (!out) throw Error("write to '" + path + "' failed");
}

void save_model(const std::string& path, const LabelGrid& model, Codec codec) {
  write_text_file(path, write_model(model, codec));
}

LabelGrid load_model(const std::string& path) {
  return read_model(read_text_file(path));
}

}  // namespace mc
