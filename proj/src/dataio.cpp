#include "kft/dataio.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <opencv2/core.hpp>
#include <opencv2/imgcodecs.hpp>

#include "kft/errors.hpp"

namespace kft {

namespace fs = std::filesystem;

GridR grayscale(const Image& im) {
    GridR out(im.height(), im.width());
    for (int r = 0; r < im.height(); ++r)
        for (int c = 0; c < im.width(); ++c) out.at(r, c) = luma(im, r, c);
    return out;
}

BoundingBox parse_annotation_line(const std::string& line, int line_no,
                                  const std::string& origin) {
    // Comma first, then tab/whitespace; both appear across dataset releases.
    std::string cleaned = line;
    std::replace(cleaned.begin(), cleaned.end(), ',', ' ');
    std::replace(cleaned.begin(), cleaned.end(), '\t', ' ');
    std::istringstream iss(cleaned);
    double x, y, w, h;
    if (!(iss >> x >> y >> w >> h))
        throw DataError(ErrorCode::MalformedLine,
                        origin + ": line " + std::to_string(line_no) +
                            ": expected 4 numbers, got \"" + line + "\"");
    if (w <= 0.0 || h <= 0.0)
        throw DataError(ErrorCode::NonPositiveExtent,
                        origin + ": line " + std::to_string(line_no) +
                            ": non-positive box extent (w=" + std::to_string(w) +
                            ", h=" + std::to_string(h) + ")");
    return BoundingBox::from_corner(x, y, w, h);
}

std::string format_annotation_line(const BoundingBox& box) {
    char buf[128];
    std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g,%.17g", box.x(), box.y(), box.w, box.h);
    return buf;
}

std::vector<BoundingBox> load_boxes(const fs::path& file) {
    std::ifstream in(file);
    if (!in)
        throw DataError(ErrorCode::MissingFile, "cannot open annotation file " + file.string());
    std::vector<BoundingBox> boxes;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r\n") == std::string::npos) continue;
        boxes.push_back(parse_annotation_line(line, line_no, file.string()));
    }
    return boxes;
}

void write_boxes(const fs::path& file, const std::vector<BoundingBox>& boxes) {
    std::ofstream out(file);
    if (!out) throw DataError(ErrorCode::WriteFailure, "cannot write " + file.string());
    for (const auto& b : boxes) out << format_annotation_line(b) << "\n";
}

Image load_image(const fs::path& file) {
    cv::Mat bgr = cv::imread(file.string(), cv::IMREAD_COLOR);
    if (bgr.empty())
        throw DataError(ErrorCode::UnreadableImage, "cannot decode image " + file.string());
    Image out(bgr.rows, bgr.cols);
    for (int r = 0; r < bgr.rows; ++r) {
        const cv::Vec3b* src = bgr.ptr<cv::Vec3b>(r);
        uint8_t* dst = out.row(r);
        for (int c = 0; c < bgr.cols; ++c) {
            dst[3 * c + 0] = src[c][2];
            dst[3 * c + 1] = src[c][1];
            dst[3 * c + 2] = src[c][0];
        }
    }
    return out;
}

void save_image(const fs::path& file, const Image& image) {
    cv::Mat bgr(image.height(), image.width(), CV_8UC3);
    for (int r = 0; r < image.height(); ++r) {
        cv::Vec3b* dst = bgr.ptr<cv::Vec3b>(r);
        const uint8_t* src = image.row(r);
        for (int c = 0; c < image.width(); ++c) {
            dst[c][0] = src[3 * c + 2];
            dst[c][1] = src[3 * c + 1];
            dst[c][2] = src[3 * c + 0];
        }
    }
    if (!cv::imwrite(file.string(), bgr))
        throw DataError(ErrorCode::WriteFailure, "cannot write image " + file.string());
}

Sequence load_sequence(const fs::path& root) {
    if (!fs::is_directory(root))
        throw DataError(ErrorCode::MissingDirectory, "sequence directory not found: " + root.string());
    const fs::path img_dir = root / "img";
    if (!fs::is_directory(img_dir))
        throw DataError(ErrorCode::MissingDirectory, "missing img/ subdirectory in " + root.string());

    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(img_dir)) {
        if (!entry.is_regular_file()) continue;
        const std::string ext = entry.path().extension().string();
        if (ext == ".jpg" || ext == ".jpeg" || ext == ".png" || ext == ".bmp")
            files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());

    Sequence seq;
    seq.name = root.filename().string();
    seq.groundtruth = load_boxes(root / "groundtruth_rect.txt");

    if (files.size() != seq.groundtruth.size()) {
        const size_t bad = std::min(files.size(), seq.groundtruth.size()) + 1;
        throw DataError(ErrorCode::CountMismatch,
                        root.string() + ": " + std::to_string(files.size()) + " images vs " +
                            std::to_string(seq.groundtruth.size()) +
                            " annotation lines (first unmatched entry: " + std::to_string(bad) +
                            ")");
    }
    if (files.size() < 2)
        throw DataError(ErrorCode::CountMismatch,
                        root.string() + ": a sequence needs at least 2 frames");

    seq.frames.reserve(files.size());
    for (size_t i = 0; i < files.size(); ++i)
        seq.frames.push_back(Frame{static_cast<int>(i) + 1, load_image(files[i])});
    return seq;
}

void write_sequence(const fs::path& root, const Sequence& seq) {
    fs::create_directories(root / "img");
    char name[32];
    for (const auto& frame : seq.frames) {
        std::snprintf(name, sizeof(name), "%04d.png", frame.index);
        save_image(root / "img" / name, frame.pixels);
    }
    write_boxes(root / "groundtruth_rect.txt", seq.groundtruth);
}

}  // namespace kft
