#include <openssl/evp.h>

#include <charconv>
#include <fstream>
#include <sstream>

#include "usp/search.hpp"

namespace usp::search {

namespace {

constexpr const char* kMagic = "uspsearch-v1";

std::string sha256_hex(const std::string& data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("sha256 failed");
  }
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned i = 0; i < len; ++i) {
    out += hex[md[i] >> 4];
    out += hex[md[i] & 0xf];
  }
  return out;
}

std::size_t segment_of(Natural n, Natural segment_size) {
  return static_cast<std::size_t>((n - 1) / segment_size);
}

std::vector<std::string> split_words(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> words;
  for (std::string w; in >> w;) words.push_back(w);
  return words;
}

Natural parse_natural(const std::string& s) {
  Natural v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw CheckpointError("checkpoint: bad number '" + s + "'");
  }
  return v;
}

}  // namespace

std::string serialize(const Checkpoint& c) {
  std::ostringstream body;
  body << kMagic << ' ' << c.limit << ' ' << c.segment_size << '\n';
  body << "scope " << c.scope << '\n';
  std::size_t next = 0;
  for (std::size_t seg = 0; seg < c.completed_segments; ++seg) {
    std::size_t end = next;
    while (end < c.hits.size() && segment_of(c.hits[end].n, c.segment_size) == seg) ++end;
    body << "seg " << seg << ' ' << (end - next) << '\n';
    for (; next < end; ++next) {
      const auto& h = c.hits[next];
      body << "hit " << h.n << ' ' << h.first << ' ' << h.second << ' '
           << to_string(h.classification) << '\n';
    }
  }
  if (next != c.hits.size()) throw std::logic_error("checkpoint hits lie outside completed segments");
  std::string text = body.str();
  return text + "digest " + sha256_hex(text) + '\n';
}

Checkpoint parse_checkpoint(const std::string& text) {
  const auto cut = text.rfind("digest ");
  if (cut == std::string::npos || (cut > 0 && text[cut - 1] != '\n')) {
    throw CheckpointError("checkpoint: missing digest line");
  }
  const std::string body = text.substr(0, cut);
  auto digest_words = split_words(text.substr(cut));
  if (digest_words.size() != 2 || digest_words[1] != sha256_hex(body)) {
    throw CheckpointError("checkpoint: digest mismatch");
  }

  std::istringstream in(body);
  std::string line;
  Checkpoint c;

  std::getline(in, line);
  auto header = split_words(line);
  if (header.size() != 3 || header[0] != kMagic) throw CheckpointError("checkpoint: bad header");
  c.limit = parse_natural(header[1]);
  c.segment_size = parse_natural(header[2]);
  if (c.segment_size == 0) throw CheckpointError("checkpoint: zero segment size");

  std::getline(in, line);
  if (line.rfind("scope ", 0) != 0) throw CheckpointError("checkpoint: missing scope line");
  c.scope = line.substr(6);

  std::size_t expected_hits = 0;
  while (std::getline(in, line)) {
    auto w = split_words(line);
    if (w.size() == 3 && w[0] == "seg") {
      if (expected_hits != 0) throw CheckpointError("checkpoint: segment hit count mismatch");
      if (parse_natural(w[1]) != c.completed_segments) {
        throw CheckpointError("checkpoint: segments out of order");
      }
      ++c.completed_segments;
      expected_hits = parse_natural(w[2]);
    } else if (w.size() == 5 && w[0] == "hit") {
      if (expected_hits == 0) throw CheckpointError("checkpoint: unexpected hit line");
      --expected_hits;
      SearchHit h;
      h.n = parse_natural(w[1]);
      h.first = parse_natural(w[2]);
      h.second = parse_natural(w[3]);
      auto cls = parse_classification(w[4]);
      if (!cls || h.n == 0) throw CheckpointError("checkpoint: bad hit line");
      h.classification = *cls;
      if (segment_of(h.n, c.segment_size) + 1 != c.completed_segments) {
        throw CheckpointError("checkpoint: hit outside its segment");
      }
      c.hits.push_back(h);
    } else {
      throw CheckpointError("checkpoint: unrecognized line '" + line + "'");
    }
  }
  if (expected_hits != 0) throw CheckpointError("checkpoint: segment hit count mismatch");
  return c;
}

void write_atomically(const std::filesystem::path& path, const std::string& contents) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp.string());
    out << contents;
    out.flush();
    if (!out) throw std::runtime_error("write failed: " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw std::runtime_error("rename failed: " + path.string() + ": " + ec.message());
}

}  // namespace usp::search
