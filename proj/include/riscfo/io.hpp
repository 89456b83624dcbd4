#ifndef RISCFO_IO_HPP
#define RISCFO_IO_HPP

// Debug/reproducibility dumps. All files are CSV with a one-line header and
// values printed with 17 significant digits (exact double round-trip).

#include <filesystem>
#include <stdexcept>
#include <string>

#include "riscfo/channel_model.hpp"
#include "riscfo/frame.hpp"
#include "riscfo/ris_pattern.hpp"

namespace riscfo {

class IoError : public std::runtime_error {
public:
    IoError(const std::filesystem::path& path, const std::string& what)
        : std::runtime_error(path.string() + ": " + what), path_(path) {}
    const std::filesystem::path& path() const noexcept { return path_; }

private:
    std::filesystem::path path_;
};

/// Columns m,l,re,im.
void write_channel_csv(const ChannelSet& channel, const std::filesystem::path& path);

/// Columns m,k,re,im.
void write_pattern_csv(const ReflectionPattern& pattern, const std::filesystem::path& path);
ReflectionPattern read_pattern_csv(const std::filesystem::path& path);

/// Columns k,u,re,im; u runs from -L_CP (cyclic prefix) to N-1.
void write_frame_csv(const PilotFrame& frame, const std::filesystem::path& path);

}  // namespace riscfo

#endif  // RISCFO_IO_HPP
