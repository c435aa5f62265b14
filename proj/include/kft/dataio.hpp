#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "kft/geometry.hpp"
#include "kft/image.hpp"

namespace kft {

struct Frame {
    int index = 1;  // 1-based
    Image pixels;
};

// An annotated image sequence. Ground truth of frame 1 is the initialization
// box; |frames| == |groundtruth| >= 2.
struct Sequence {
    std::string name;
    std::vector<Frame> frames;
    std::vector<BoundingBox> groundtruth;
};

// Parses one corner-form annotation line "x,y,w,h" (comma, tab or whitespace
// separated) into center form. line_no and origin are only for error text.
BoundingBox parse_annotation_line(const std::string& line, int line_no,
                                  const std::string& origin);

std::string format_annotation_line(const BoundingBox& box);

// Reads a corner-form box file (ground truth or tracker results).
std::vector<BoundingBox> load_boxes(const std::filesystem::path& file);

void write_boxes(const std::filesystem::path& file, const std::vector<BoundingBox>& boxes);

// Loads `<root>/img/*.jpg|png` (lexicographic order) plus
// `<root>/groundtruth_rect.txt`.
Sequence load_sequence(const std::filesystem::path& root);

// Writes a sequence in the same layout (img/%04d.png + groundtruth_rect.txt),
// so generated fixtures are indistinguishable from loaded datasets.
void write_sequence(const std::filesystem::path& root, const Sequence& seq);

Image load_image(const std::filesystem::path& file);
void save_image(const std::filesystem::path& file, const Image& image);

}  // namespace kft
