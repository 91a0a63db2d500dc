#include "hseg/image_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#ifdef HSEG_HAVE_PNG
#include <png.h>
#endif

namespace hseg {

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
    throw std::runtime_error(path + ": " + what);
}

// Netpbm token reader: skips whitespace and '#' comments.
int next_pnm_int(std::istream& in, const std::string& path) {
    int c;
    while ((c = in.get()) != EOF) {
        if (c == '#') {
            while ((c = in.get()) != EOF && c != '\n') {}
        } else if (!isspace(c)) {
            break;
        }
    }
    if (c == EOF)
        fail(path, "truncated header");
    int value = 0;
    bool any = false;
    while (c != EOF && isdigit(c)) {
        value = value * 10 + (c - '0');
        any = true;
        c = in.get();
    }
    if (!any)
        fail(path, "malformed header");
    return value;
}

std::string extension(const std::string& path) {
    auto dot = path.find_last_of('.');
    if (dot == std::string::npos)
        return "";
    std::string ext = path.substr(dot + 1);
    for (char& ch : ext)
        ch = static_cast<char>(tolower(ch));
    return ext;
}

} // namespace

Raster load_ppm(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        fail(path, "cannot open");
    char m0 = 0, m1 = 0;
    in.get(m0);
    in.get(m1);
    if (m0 != 'P' || m1 != '6')
        fail(path, "not a binary PPM (P6)");
    int w = next_pnm_int(in, path);
    int h = next_pnm_int(in, path);
    int maxval = next_pnm_int(in, path);
    if (w < 1 || h < 1)
        fail(path, "zero-dimension image");
    if (maxval < 1 || maxval > 255)
        fail(path, "unsupported maxval (8-bit only)");
    Raster img(w, h);
    std::vector<char> row(static_cast<size_t>(w) * 3);
    for (int y = 0; y < h; ++y) {
        if (!in.read(row.data(), static_cast<std::streamsize>(row.size())))
            fail(path, "truncated pixel data");
        for (int x = 0; x < w; ++x) {
            img.at(x, y) = {static_cast<uint8_t>(row[3 * x + 0]),
                            static_cast<uint8_t>(row[3 * x + 1]),
                            static_cast<uint8_t>(row[3 * x + 2])};
        }
    }
    return img;
}

void save_ppm(const Raster& img, const std::string& path) {
    if (img.empty())
        throw std::invalid_argument("cannot save an empty raster");
    std::ofstream out(path, std::ios::binary);
    if (!out)
        fail(path, "cannot open for writing");
    out << "P6\n" << img.width << " " << img.height << "\n255\n";
    std::vector<char> row(static_cast<size_t>(img.width) * 3);
    for (int y = 0; y < img.height; ++y) {
        for (int x = 0; x < img.width; ++x) {
            const Rgb& p = img.at(x, y);
            row[3 * x + 0] = static_cast<char>(p.r);
            row[3 * x + 1] = static_cast<char>(p.g);
            row[3 * x + 2] = static_cast<char>(p.b);
        }
        out.write(row.data(), static_cast<std::streamsize>(row.size()));
    }
    if (!out)
        fail(path, "write failed");
}

void save_pgm(const std::vector<uint8_t>& gray, int width, int height, const std::string& path) {
    if (width < 1 || height < 1 || gray.size() != static_cast<size_t>(width) * height)
        throw std::invalid_argument("pgm: bad dimensions");
    std::ofstream out(path, std::ios::binary);
    if (!out)
        fail(path, "cannot open for writing");
    out << "P5\n" << width << " " << height << "\n255\n";
    out.write(reinterpret_cast<const char*>(gray.data()), static_cast<std::streamsize>(gray.size()));
    if (!out)
        fail(path, "write failed");
}

void save_label_map(const LabelMap& labels, const std::string& path) {
    if (labels.labels.empty())
        throw std::invalid_argument("cannot save an empty label map");
    uint32_t top = 0;
    for (uint32_t v : labels.labels)
        top = std::max(top, v);
    std::ofstream out(path, std::ios::binary);
    if (!out)
        fail(path, "cannot open for writing");
    if (top <= 65535) {
        // 16-bit PGM, big-endian samples; maxval is fixed at 65535 so the
        // sample width is unambiguous
        out << "P5\n" << labels.width << " " << labels.height << "\n65535\n";
        std::vector<char> row(static_cast<size_t>(labels.width) * 2);
        for (int y = 0; y < labels.height; ++y) {
            for (int x = 0; x < labels.width; ++x) {
                uint32_t v = labels.at(x, y);
                row[2 * x] = static_cast<char>((v >> 8) & 0xff);
                row[2 * x + 1] = static_cast<char>(v & 0xff);
            }
            out.write(row.data(), static_cast<std::streamsize>(row.size()));
        }
    } else {
        out << "HSEGL1\n" << labels.width << " " << labels.height << "\n";
        for (int y = 0; y < labels.height; ++y) {
            for (int x = 0; x < labels.width; ++x)
                out << labels.at(x, y) << (x + 1 == labels.width ? '\n' : ' ');
        }
    }
    if (!out)
        fail(path, "write failed");
}

LabelMap load_label_map(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        fail(path, "cannot open");
    std::string magic;
    in >> magic;
    if (magic == "HSEGL1") {
        int w = 0, h = 0;
        in >> w >> h;
        if (!in || w < 1 || h < 1)
            fail(path, "malformed label map header");
        LabelMap lm(w, h);
        for (auto& v : lm.labels) {
            if (!(in >> v))
                fail(path, "truncated label data");
        }
        return lm;
    }
    if (magic != "P5")
        fail(path, "unsupported label map format");
    in.seekg(0);
    in.get();
    in.get();
    int w = next_pnm_int(in, path);
    int h = next_pnm_int(in, path);
    int maxval = next_pnm_int(in, path);
    if (w < 1 || h < 1 || maxval < 1 || maxval > 65535)
        fail(path, "malformed PGM header");
    LabelMap lm(w, h);
    const int bytes = maxval > 255 ? 2 : 1;
    std::vector<char> row(static_cast<size_t>(w) * bytes);
    for (int y = 0; y < h; ++y) {
        if (!in.read(row.data(), static_cast<std::streamsize>(row.size())))
            fail(path, "truncated pixel data");
        for (int x = 0; x < w; ++x) {
            uint32_t v = bytes == 2
                             ? (static_cast<uint8_t>(row[2 * x]) << 8) | static_cast<uint8_t>(row[2 * x + 1])
                             : static_cast<uint8_t>(row[x]);
            lm.at(x, y) = v;
        }
    }
    return lm;
}

#ifdef HSEG_HAVE_PNG

bool png_supported() { return true; }

namespace {
struct PngReader {
    png_structp png = nullptr;
    png_infop info = nullptr;
    FILE* fp = nullptr;
    ~PngReader() {
        if (png)
            png_destroy_read_struct(&png, info ? &info : nullptr, nullptr);
        if (fp)
            fclose(fp);
    }
};
struct PngWriter {
    png_structp png = nullptr;
    png_infop info = nullptr;
    FILE* fp = nullptr;
    ~PngWriter() {
        if (png)
            png_destroy_write_struct(&png, info ? &info : nullptr);
        if (fp)
            fclose(fp);
    }
};
} // namespace

Raster load_png(const std::string& path) {
    PngReader r;
    r.fp = fopen(path.c_str(), "rb");
    if (!r.fp)
        fail(path, "cannot open");
    unsigned char sig[8];
    if (fread(sig, 1, 8, r.fp) != 8 || png_sig_cmp(sig, 0, 8))
        fail(path, "not a PNG file");
    r.png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    r.info = png_create_info_struct(r.png);
    if (!r.png || !r.info)
        fail(path, "libpng init failed");
    if (setjmp(png_jmpbuf(r.png)))
        fail(path, "PNG decode error");
    png_init_io(r.png, r.fp);
    png_set_sig_bytes(r.png, 8);
    png_read_info(r.png, r.info);

    png_set_expand(r.png);         // palette/gray/low-bit to full
    png_set_strip_16(r.png);       // 16-bit down to 8
    png_set_strip_alpha(r.png);
    png_set_gray_to_rgb(r.png);
    png_read_update_info(r.png, r.info);

    int w = static_cast<int>(png_get_image_width(r.png, r.info));
    int h = static_cast<int>(png_get_image_height(r.png, r.info));
    if (w < 1 || h < 1)
        fail(path, "zero-dimension image");
    if (png_get_channels(r.png, r.info) != 3)
        fail(path, "unsupported PNG layout");

    Raster img(w, h);
    std::vector<png_byte> row(static_cast<size_t>(w) * 3);
    for (int y = 0; y < h; ++y) {
        png_read_row(r.png, row.data(), nullptr);
        for (int x = 0; x < w; ++x)
            img.at(x, y) = {row[3 * x], row[3 * x + 1], row[3 * x + 2]};
    }
    return img;
}

void save_png(const Raster& img, const std::string& path) {
    if (img.empty())
        throw std::invalid_argument("cannot save an empty raster");
    PngWriter w;
    w.fp = fopen(path.c_str(), "wb");
    if (!w.fp)
        fail(path, "cannot open for writing");
    w.png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    w.info = png_create_info_struct(w.png);
    if (!w.png || !w.info)
        fail(path, "libpng init failed");
    if (setjmp(png_jmpbuf(w.png)))
        fail(path, "PNG encode error");
    png_init_io(w.png, w.fp);
    png_set_IHDR(w.png, w.info, img.width, img.height, 8, PNG_COLOR_TYPE_RGB,
                 PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    png_write_info(w.png, w.info);
    std::vector<png_byte> row(static_cast<size_t>(img.width) * 3);
    for (int y = 0; y < img.height; ++y) {
        for (int x = 0; x < img.width; ++x) {
            const Rgb& p = img.at(x, y);
            row[3 * x] = p.r;
            row[3 * x + 1] = p.g;
            row[3 * x + 2] = p.b;
        }
        png_write_row(w.png, row.data());
    }
    png_write_end(w.png, w.info);
}

#else

bool png_supported() { return false; }

Raster load_png(const std::string& path) {
    fail(path, "PNG support not built in");
}

void save_png(const Raster& img, const std::string& path) {
    (void)img;
    fail(path, "PNG support not built in");
}

#endif

Raster load_image(const std::string& path) {
    std::ifstream probe(path, std::ios::binary);
    if (!probe)
        fail(path, "cannot open");
    unsigned char sig[2] = {0, 0};
    probe.read(reinterpret_cast<char*>(sig), 2);
    probe.close();
    if (sig[0] == 'P' && sig[1] == '6')
        return load_ppm(path);
    if (sig[0] == 0x89 && sig[1] == 'P')
        return load_png(path);
    fail(path, "unsupported image format");
}

void save_image(const Raster& img, const std::string& path) {
    std::string ext = extension(path);
    if (ext == "png")
        save_png(img, path);
    else
        save_ppm(img, path);
}

} // namespace hseg
