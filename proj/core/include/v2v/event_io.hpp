#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string_view>

#include "v2v/types.hpp"

namespace v2v {

// Text:   one event per line, "t x y p", p in {-1,1}.
// Binary: 16-byte header ("EVT1", u16 width, u16 height, u32 count,
//         4 reserved) then 13-byte records (f64 t, u16 x, u16 y, i8 p),
//         all little-endian.
enum class EventFormat { text, binary };

EventFormat parse_event_format(std::string_view name);

struct EventReadOptions {
  // Required bounds for text input; inferred from max coordinates when absent.
  std::optional<Dims> dims;
  bool sort_unsorted = false;
};

EventStream read_events(std::istream& in, EventFormat format, const EventReadOptions& options = {});
EventStream read_events(const std::filesystem::path& path, EventFormat format,
                        const EventReadOptions& options = {});

void write_events(const EventStream& stream, std::ostream& out, EventFormat format);
void write_events(const EventStream& stream, const std::filesystem::path& path, EventFormat format);

}  // namespace v2v
