#include <algorithm>
#include <cctype>
#include <sstream>

#include "cvdisc/errors.hpp"
#include "cvdisc/probes.hpp"

namespace cvdisc {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

Block parse_block(std::string text, const std::string& whole) {
  Block b;
  text = trim(text);
  if (text.empty()) throw InvalidPartitionError("empty block in '" + whole + "'");
  if (text[0] == 'c' || text[0] == 'v') {
    b.kind = text[0] == 'c' ? BlockKind::Coherent : BlockKind::Vacuum;
    text = trim(text.substr(1));
  }
  std::string body;
  for (char c : text) {
    if (c == '*') ++b.idlers;
    else body += c;
  }
  body = trim(body);
  const bool listed = body.find_first_of(", ") != std::string::npos;
  if (listed) {
    for (char& c : body)
      if (c == ' ') c = ',';
    for (const auto& tok : split(body, ',')) {
      if (tok.empty()) continue;
      if (!std::all_of(tok.begin(), tok.end(),
                       [](unsigned char c) { return std::isdigit(c); }))
        throw InvalidPartitionError("bad channel '" + tok + "' in '" + whole + "'");
      b.channels.push_back(std::stoi(tok) - 1);
    }
  } else {
    for (char c : body) {
      if (c < '1' || c > '9')
        throw InvalidPartitionError("bad channel character '" + std::string(1, c) +
                                    "' in '" + whole + "'");
      b.channels.push_back(c - '1');
    }
  }
  if (b.channels.empty())
    throw InvalidPartitionError("block without channels in '" + whole + "'");
  for (int c : b.channels)
    if (c < 0) throw InvalidPartitionError("channels are 1-based in '" + whole + "'");
  return b;
}

}  // namespace

Partition Partition::parse(const std::string& text, int m) {
  Partition p;
  for (const auto& part : split(text, '|')) p.blocks.push_back(parse_block(part, text));
  int max_channel = 0;
  for (const auto& b : p.blocks)
    for (int c : b.channels) max_channel = std::max(max_channel, c + 1);
  if (m == 0) m = max_channel;
  if (max_channel > m)
    throw InvalidPartitionError("partition '" + text + "' references channel " +
                                std::to_string(max_channel) + " but m = " +
                                std::to_string(m));
  p.m = m;
  return p;
}

std::string Partition::to_string() const {
  bool digits = true;
  for (const auto& b : blocks)
    for (int c : b.channels) digits = digits && c < 9;
  std::string out;
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    const Block& b = blocks[i];
    if (i) out += '|';
    if (b.kind == BlockKind::Coherent) out += 'c';
    if (b.kind == BlockKind::Vacuum) out += 'v';
    for (std::size_t k = 0; k < b.channels.size(); ++k) {
      if (!digits && k) out += ',';
      out += std::to_string(b.channels[k] + 1);
    }
    // A lone multi-digit channel needs a comma so it is not read digit by digit.
    if (!digits && b.channels.size() == 1 && b.channels[0] >= 9) out += ',';
    out.append(static_cast<std::size_t>(b.idlers), '*');
  }
  return out;
}

int Partition::overlap() const {
  int total = 0;
  for (const auto& b : blocks) total += static_cast<int>(b.channels.size());
  return total - m;
}

bool Partition::is_disjoint() const {
  std::vector<int> seen(static_cast<std::size_t>(std::max(m, 0)), 0);
  for (const auto& b : blocks)
    for (int c : b.channels) {
      if (c < 0 || c >= m || seen[static_cast<std::size_t>(c)]++) return false;
    }
  return true;
}

bool Partition::has_idlers() const {
  return std::any_of(blocks.begin(), blocks.end(),
                     [](const Block& b) { return b.idlers > 0; });
}

bool Partition::has_classical_blocks() const {
  return std::any_of(blocks.begin(), blocks.end(),
                     [](const Block& b) { return b.kind != BlockKind::Ghz; });
}

namespace {

void validate_blocks(const Partition& p, const char* what) {
  if (p.m < 1) throw InvalidPartitionError(std::string(what) + ": m must be >= 1");
  if (p.blocks.empty()) throw InvalidPartitionError(std::string(what) + ": no blocks");
  for (const auto& b : p.blocks) {
    std::vector<int> ch = b.channels;
    std::sort(ch.begin(), ch.end());
    if (std::adjacent_find(ch.begin(), ch.end()) != ch.end())
      throw InvalidPartitionError(std::string(what) + ": channel repeated inside a block");
    for (int c : ch)
      if (c < 0 || c >= p.m)
        throw InvalidPartitionError(std::string(what) + ": channel " +
                                    std::to_string(c + 1) + " outside 1.." +
                                    std::to_string(p.m));
    if (b.idlers < 0) throw InvalidPartitionError("negative idler count");
    if (b.kind == BlockKind::Ghz) {
      if (b.modes() < 2)
        throw InvalidPartitionError(
            std::string(what) + ": entangled block {" +
            std::to_string(b.channels.front() + 1) +
            "} needs a second channel or an idler");
    } else {
      if (b.channels.size() != 1 || b.idlers != 0)
        throw InvalidPartitionError(std::string(what) +
                                    ": classical blocks cover exactly one channel");
    }
  }
  std::vector<int> seen(static_cast<std::size_t>(p.m), 0);
  for (const auto& b : p.blocks)
    for (int c : b.channels) ++seen[static_cast<std::size_t>(c)];
  for (int c = 0; c < p.m; ++c)
    if (!seen[static_cast<std::size_t>(c)])
      throw InvalidPartitionError(std::string(what) + ": channel " +
                                  std::to_string(c + 1) + " is not probed");
}

}  // namespace

void validate_disjoint(const Partition& p) {
  validate_blocks(p, "disjoint partition");
  if (!p.is_disjoint())
    throw InvalidPartitionError("disjoint partition: blocks overlap");
}

void validate_cover(const Partition& p) { validate_blocks(p, "partition"); }

}  // namespace cvdisc
