#include "intenselab/snapshot.hpp"

#include <cstring>
#include <fstream>

namespace ilab {

namespace {

constexpr char kMagic[4] = {'I', 'G', 'R', 'P'};
constexpr uint32_t kVersion = 1;

void put_u32(std::ostream &os, uint32_t v) {
  unsigned char b[4] = {static_cast<unsigned char>(v),
                        static_cast<unsigned char>(v >> 8),
                        static_cast<unsigned char>(v >> 16),
                        static_cast<unsigned char>(v >> 24)};
  os.write(reinterpret_cast<char *>(b), 4);
}

uint32_t get_u32(std::istream &is) {
  unsigned char b[4];
  is.read(reinterpret_cast<char *>(b), 4);
  if (!is) throw BadInput("snapshot: truncated");
  return uint32_t(b[0]) | uint32_t(b[1]) << 8 | uint32_t(b[2]) << 16 |
         uint32_t(b[3]) << 24;
}

}  // namespace

void snapshot_save(const std::string &path, const GroupTable &G,
                   const std::string &descriptor) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw BadInput("snapshot_save: cannot open " + path);
  os.write(kMagic, 4);
  put_u32(os, kVersion);
  put_u32(os, G.order());
  put_u32(os, G.prime());
  put_u32(os, uint32_t(G.generators().size()));
  for (ElemIdx g : G.generators()) put_u32(os, g);
  if (G.has_table()) {
    os.put(char(0));
    const auto &t = G.table();
    os.write(reinterpret_cast<const char *>(t.data()),
             std::streamsize(t.size() * sizeof(uint16_t)));
  } else {
    os.put(char(1));
    put_u32(os, uint32_t(descriptor.size()));
    os.write(descriptor.data(), std::streamsize(descriptor.size()));
  }
  if (!os) throw BadInput("snapshot_save: write failed");
}

SnapshotLoad snapshot_load(const std::string &path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw BadInput("snapshot_load: cannot open " + path);
  char magic[4];
  is.read(magic, 4);
  if (!is || std::memcmp(magic, kMagic, 4) != 0)
    throw BadInput("snapshot_load: bad magic");
  uint32_t version = get_u32(is);
  if (version != kVersion) throw BadInput("snapshot_load: unsupported version");
  uint32_t n = get_u32(is);
  get_u32(is);  // p, informational
  uint32_t gc = get_u32(is);
  std::vector<ElemIdx> gens(gc);
  for (uint32_t i = 0; i < gc; ++i) gens[i] = get_u32(is);
  int mode = is.get();
  SnapshotLoad out;
  if (mode == 0) {
    std::vector<uint16_t> table(size_t(n) * n);
    is.read(reinterpret_cast<char *>(table.data()),
            std::streamsize(table.size() * sizeof(uint16_t)));
    if (!is) throw BadInput("snapshot_load: truncated table");
    out.group = GroupTable::from_table(n, gens, std::move(table));
  } else if (mode == 1) {
    uint32_t len = get_u32(is);
    std::string desc(len, '\0');
    is.read(desc.data(), len);
    if (!is) throw BadInput("snapshot_load: truncated descriptor");
    out.descriptor = std::move(desc);
  } else {
    throw BadInput("snapshot_load: bad mode byte");
  }
  return out;
}

}  // namespace ilab
