#include "radex/manifest.hpp"

#include <fstream>
#include <unordered_set>

#include "radex/csv.hpp"
#include "radex/error.hpp"

namespace radex {

std::vector<ManifestRow> read_manifest(const std::filesystem::path& path) {
  const auto rows = csv::read_file(path);
  if (rows.empty()) fail(ErrorKind::BadFormat, path.string() + ": empty manifest");
  const auto& header = rows[0];
  const bool has_label = header.size() == 4 && header[3] == "label";
  if (!(header.size() == 3 || has_label) || header[0] != "sample_id" ||
      header[1] != "image" || header[2] != "mask")
    fail(ErrorKind::BadFormat,
         path.string() + ": header must be sample_id,image,mask[,label]");

  const auto base = path.has_parent_path() ? path.parent_path()
                                           : std::filesystem::path(".");
  auto resolve = [&base](const std::string& p) {
    std::filesystem::path fp(p);
    return fp.is_absolute() ? fp : base / fp;
  };

  std::vector<ManifestRow> out;
  std::unordered_set<std::string> seen;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    if (row.size() != header.size())
      fail(ErrorKind::BadFormat, path.string() + ": row " +
                                     std::to_string(r + 1) +
                                     " has wrong field count");
    ManifestRow m;
    m.sample_id = row[0];
    if (!seen.insert(m.sample_id).second)
      fail(ErrorKind::BadFormat,
           path.string() + ": duplicate sample_id '" + m.sample_id + "'");
    m.image_path = resolve(row[1]);
    m.mask_path = resolve(row[2]);
    if (has_label) {
      if (row[3] == "benign" || row[3] == "0")
        m.label = 0;
      else if (row[3] == "malignant" || row[3] == "1")
        m.label = 1;
      else
        fail(ErrorKind::BadFormat,
             path.string() + ": bad label '" + row[3] + "' for sample " +
                 m.sample_id);
    }
    for (const auto& file : {m.image_path, m.mask_path})
      if (!std::filesystem::exists(file))
        fail(ErrorKind::Io, "sample " + m.sample_id + ": missing file " +
                                file.string());
    out.push_back(std::move(m));
  }
  if (out.empty()) fail(ErrorKind::BadFormat, path.string() + ": no samples");
  return out;
}

void write_manifest(const std::filesystem::path& path,
                    const std::vector<ManifestRow>& rows) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorKind::Io, "cannot write " + path.string());
  const bool has_label =
      !rows.empty() && rows.front().label.has_value();
  std::vector<std::string> fields{"sample_id", "image", "mask"};
  if (has_label) fields.push_back("label");
  csv::write_row(out, fields);
  for (const auto& r : rows) {
    fields = {r.sample_id, r.image_path.string(), r.mask_path.string()};
    if (has_label) fields.push_back(std::to_string(r.label.value()));
    csv::write_row(out, fields);
  }
}

}  // namespace radex
