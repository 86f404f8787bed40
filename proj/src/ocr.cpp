#include "gpocr/ocr.hpp"
#include "gpocr/error.hpp"
#include "gpocr/kernel.hpp"
#include "gpocr/resample.hpp"
#include "gpocr/rng.hpp"
#include "gpocr/svg.hpp"
#include "gpocr/upsample.hpp"

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <atomic>
#include <cerrno>
#include <chrono>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>
#include <unordered_map>

namespace gpocr {
namespace {

namespace fs = std::filesystem;

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FileNotFound(path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

bool is_ascii_space(char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' || c == '\f';
}

bool is_ascii_punct(char c) {
    const unsigned char u = static_cast<unsigned char>(c);
    return u < 0x80 && std::ispunct(u);
}

std::size_t count_occurrences(const std::string& s, const std::string& needle) {
    std::size_t n = 0;
    for (std::size_t pos = s.find(needle); pos != std::string::npos; pos = s.find(needle, pos + 1)) ++n;
    return n;
}

void replace_all(std::string& s, const std::string& from, const std::string& to) {
    for (std::size_t pos = s.find(from); pos != std::string::npos; pos = s.find(from, pos + to.size()))
        s.replace(pos, from.size(), to);
}

struct SpawnResult {
    int exit_code = -1;
    std::string stdout_text;
};

// Runs argv with stdout captured; throws EngineNotFound/EngineTimeout/EngineFailure.
SpawnResult spawn_capture(const std::vector<std::string>& argv, double timeout_seconds) {
    int outp[2];
    int errp[2];
    if (pipe(outp) != 0) throw IoError("pipe failed");
    if (pipe2(errp, O_CLOEXEC) != 0) throw IoError("pipe2 failed");

    const pid_t pid = fork();
    if (pid < 0) throw IoError("fork failed");
    if (pid == 0) {
        dup2(outp[1], STDOUT_FILENO);
        close(outp[0]);
        close(outp[1]);
        std::vector<char*> cargv;
        cargv.reserve(argv.size() + 1);
        for (const auto& a : argv) cargv.push_back(const_cast<char*>(a.c_str()));
        cargv.push_back(nullptr);
        execvp(cargv[0], cargv.data());
        const int e = errno;
        [[maybe_unused]] ssize_t n = write(errp[1], &e, sizeof e);
        _exit(127);
    }

    close(outp[1]);
    close(errp[1]);

    SpawnResult result;
    const auto deadline = std::chrono::steady_clock::now() +
                          std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                              std::chrono::duration<double>(timeout_seconds));
    char buf[4096];
    bool exited = false;
    int status = 0;
    bool eof = false;
    while (!exited || !eof) {
        if (!eof) {
            pollfd pfd{outp[0], POLLIN, 0};
            const int pr = poll(&pfd, 1, 50);
            if (pr > 0) {
                const ssize_t n = read(outp[0], buf, sizeof buf);
                if (n > 0)
                    result.stdout_text.append(buf, static_cast<std::size_t>(n));
                else
                    eof = true;
            }
        }
        if (!exited) {
            const pid_t w = waitpid(pid, &status, WNOHANG);
            if (w == pid) exited = true;
        }
        if (!exited && std::chrono::steady_clock::now() > deadline) {
            kill(pid, SIGKILL);
            waitpid(pid, &status, 0);
            close(outp[0]);
            close(errp[0]);
            throw EngineTimeout(argv[0]);
        }
        if (exited && !eof) {
            // child gone: drain what's left, then EOF is guaranteed
            ssize_t n;
            while ((n = read(outp[0], buf, sizeof buf)) > 0)
                result.stdout_text.append(buf, static_cast<std::size_t>(n));
            eof = true;
        }
    }
    close(outp[0]);

    int exec_errno = 0;
    const ssize_t en = read(errp[0], &exec_errno, sizeof exec_errno);
    close(errp[0]);
    if (en == sizeof exec_errno) {
        if (exec_errno == ENOENT) throw EngineNotFound(argv[0]);
        throw EngineFailure(argv[0] + std::string(": ") + std::strerror(exec_errno));
    }

    if (WIFSIGNALED(status))
        throw EngineFailure(argv[0] + std::string(": killed by signal ") + std::to_string(WTERMSIG(status)));
    result.exit_code = WEXITSTATUS(status);
    if (result.exit_code != 0)
        throw EngineFailure(argv[0] + std::string(": exit code ") + std::to_string(result.exit_code));
    return result;
}

} // namespace

const char* pipeline_name(Pipeline p) {
    switch (p) {
        case Pipeline::Gp: return "gp";
        case Pipeline::Bicubic: return "bicubic";
        default: return "lowres";
    }
}

std::vector<CorpusEntry> load_manifest(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FileNotFound(path);
    const fs::path base = fs::path(path).parent_path();

    std::vector<CorpusEntry> entries;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto tab = line.find('\t');
        if (tab == std::string::npos || tab == 0 || tab + 1 >= line.size())
            throw Error("malformed manifest line: " + line);
        auto resolve = [&](std::string p) {
            fs::path fp(p);
            return (fp.is_absolute() ? fp : base / fp).string();
        };
        CorpusEntry e{resolve(line.substr(0, tab)), resolve(line.substr(tab + 1))};
        if (!fs::exists(e.image_path)) throw FileNotFound(e.image_path);
        if (!fs::exists(e.ground_truth_path)) throw FileNotFound(e.ground_truth_path);
        entries.push_back(std::move(e));
    }
    return entries;
}

std::vector<std::string> tokenize(const std::string& text) {
    std::vector<std::string> tokens;
    std::size_t i = 0;
    while (i < text.size()) {
        while (i < text.size() && is_ascii_space(text[i])) ++i;
        std::size_t j = i;
        while (j < text.size() && !is_ascii_space(text[j])) ++j;
        if (j > i) {
            std::size_t a = i, b = j;
            while (a < b && is_ascii_punct(text[a])) ++a;
            while (b > a && is_ascii_punct(text[b - 1])) --b;
            if (b > a) tokens.push_back(text.substr(a, b - a));
        }
        i = j;
    }
    return tokens;
}

double word_accuracy(const OcrResult& predicted, const std::vector<std::string>& truth) {
    if (truth.empty()) throw EmptyGroundTruth();
    std::unordered_map<std::string, int> counts;
    for (const auto& t : truth) ++counts[t];
    std::size_t matched = 0;
    for (const auto& t : predicted.tokens) {
        auto it = counts.find(t);
        if (it != counts.end() && it->second > 0) {
            --it->second;
            ++matched;
        }
    }
    return static_cast<double>(matched) / static_cast<double>(truth.size());
}

OcrResult run_ocr(const OcrEngine& engine, const std::string& img_path) {
    const std::size_t n_input = count_occurrences(engine.command_template, "{input}");
    const std::size_t n_base = count_occurrences(engine.command_template, "{output_base}");
    if (n_input != 1) throw Error("engine template must contain {input} exactly once");
    if (n_base > 1) throw Error("engine template may contain {output_base} at most once");
    const bool file_mode = n_base == 1;
    const std::string output_base = img_path + ".ocrout";

    std::vector<std::string> argv;
    std::istringstream ss(engine.command_template);
    std::string tok;
    while (ss >> tok) {
        replace_all(tok, "{input}", img_path);
        replace_all(tok, "{output_base}", output_base);
        argv.push_back(tok);
    }
    if (argv.empty()) throw Error("empty engine template");

    const SpawnResult spawned = spawn_capture(argv, engine.timeout_seconds);

    OcrResult result;
    if (file_mode) {
        const std::string out_file = output_base + ".txt";
        if (!fs::exists(out_file))
            throw EngineFailure(argv[0] + std::string(": did not produce ") + out_file);
        result.raw_text = read_text_file(out_file);
        std::error_code ec;
        fs::remove(out_file, ec);
    } else {
        result.raw_text = spawned.stdout_text;
    }
    result.tokens = tokenize(result.raw_text);
    return result;
}

namespace {

GrayImage enhance_branch(const GrayImage& noisy_lowres, Pipeline method, int ratio) {
    const double ell = default_length_scale(noisy_lowres.height, noisy_lowres.width);
    GrayImage up;
    if (method == Pipeline::Gp) {
        up = gp_upsample(noisy_lowres, UpsampleConfig{ratio, KernelConfig{1.0, ell, 1.5}});
    } else {
        up = bicubic_upsample(noisy_lowres, ratio);
    }
    const GrayImage filtered = bilateral_filter(up, BilateralParams{});
    if (is_near_binary(filtered)) return filtered;
    return adaptive_gaussian_threshold(filtered, ThresholdParams{});
}

std::string entry_id(std::size_t index) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "e%03zu", index);
    return buf;
}

} // namespace

AccuracyReport run_benchmark(const std::vector<CorpusEntry>& corpus, const OcrEngine& engine,
                             const BenchmarkOptions& opts) {
    if (corpus.empty()) throw Error("corpus is empty");
    if (opts.pipelines.empty()) throw Error("no pipelines requested");
    if (opts.work_dir.empty()) throw Error("work_dir not set");
    fs::create_directories(opts.work_dir);

    // canonical method order, filtered by request
    std::vector<Pipeline> methods;
    for (Pipeline p : {Pipeline::Gp, Pipeline::Bicubic, Pipeline::LowRes})
        if (std::find(opts.pipelines.begin(), opts.pipelines.end(), p) != opts.pipelines.end())
            methods.push_back(p);

    struct Cell {
        double accuracy = 0.0;
        bool errored = false;
    };
    std::vector<std::vector<Cell>> cells(corpus.size(), std::vector<Cell>(methods.size()));
    std::atomic<std::size_t> next_job{0};
    std::mutex log_mutex;

    auto process_entry = [&](std::size_t i) {
        const std::vector<std::string> truth = tokenize(read_text_file(corpus[i].ground_truth_path));
        if (truth.empty()) throw EmptyGroundTruth();

        const GrayImage original = load_image(corpus[i].image_path);
        const GrayImage lowres = box_downsample(original, opts.ratio);
        const NoiseParams noise{opts.noise.sigma, substream_seed(opts.noise.seed, i)};
        const GrayImage noisy = add_gaussian_noise(lowres, noise);
        const std::string id = entry_id(i);
        const std::string lowres_path = opts.work_dir + "/" + id + ".lowres.pgm";
        save_image(noisy, lowres_path);

        for (std::size_t m = 0; m < methods.size(); ++m) {
            std::string ocr_input = lowres_path;
            if (methods[m] != Pipeline::LowRes) {
                const GrayImage processed = enhance_branch(noisy, methods[m], opts.ratio);
                ocr_input = opts.work_dir + "/" + id + "." + pipeline_name(methods[m]) + ".pgm";
                save_image(processed, ocr_input);
            }
            try {
                const OcrResult ocr = run_ocr(engine, ocr_input);
                cells[i][m].accuracy = word_accuracy(ocr, truth);
            } catch (const Error& e) {
                cells[i][m].errored = true;
                std::lock_guard<std::mutex> lock(log_mutex);
                std::fprintf(stderr, "[%s/%s] scored 0: %s\n", id.c_str(), pipeline_name(methods[m]),
                             e.what());
            }
        }
    };

    const int n_workers = std::max(1, std::min<int>(opts.workers, static_cast<int>(corpus.size())));
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> worker_errors(static_cast<std::size_t>(n_workers));
    for (int t = 0; t < n_workers; ++t) {
        pool.emplace_back([&, t] {
            try {
                for (std::size_t i = next_job++; i < corpus.size(); i = next_job++) process_entry(i);
            } catch (...) {
                worker_errors[static_cast<std::size_t>(t)] = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    for (const auto& err : worker_errors)
        if (err) std::rethrow_exception(err);

    bool any_ok = false;
    for (const auto& row : cells)
        for (const auto& c : row)
            if (!c.errored) any_ok = true;
    if (!any_ok) throw EngineFailure("every image failed");

    AccuracyReport report;
    report.ratio = opts.ratio;
    report.sigma = opts.noise.sigma;
    report.seed = opts.noise.seed;
    for (std::size_t i = 0; i < corpus.size(); ++i)
        for (std::size_t m = 0; m < methods.size(); ++m)
            report.per_image.push_back({entry_id(i), pipeline_name(methods[m]), cells[i][m].accuracy});

    double gp_avg = 0.0;
    bool have_gp = false;
    for (std::size_t m = 0; m < methods.size(); ++m) {
        MethodSummary s;
        s.method = pipeline_name(methods[m]);
        s.max = 0.0;
        s.min = 1.0;
        double sum = 0.0;
        for (std::size_t i = 0; i < corpus.size(); ++i) {
            const double a = cells[i][m].accuracy;
            sum += a;
            s.max = std::max(s.max, a);
            s.min = std::min(s.min, a);
        }
        s.average = sum / static_cast<double>(corpus.size());
        double sq = 0.0;
        for (std::size_t i = 0; i < corpus.size(); ++i) {
            const double d = cells[i][m].accuracy - s.average;
            sq += d * d;
        }
        s.variance = sq / static_cast<double>(corpus.size());
        if (methods[m] == Pipeline::Gp) {
            have_gp = true;
            gp_avg = s.average;
        }
        report.summary.push_back(s);
    }
    for (auto& s : report.summary) {
        if (s.method != "gp" && have_gp && s.average > 0.0) {
            s.has_gain = true;
            s.gain = (gp_avg - s.average) / s.average;
        }
    }
    return report;
}

void emit_report(const AccuracyReport& report, const std::string& out_dir) {
    if (report.summary.empty()) throw Error("report has no methods");
    fs::create_directories(out_dir);
    char buf[256];

    {
        std::ofstream out(out_dir + "/per_image.csv");
        if (!out) throw IoError("cannot open per_image.csv");
        out << "id,method,accuracy\n";
        for (const auto& row : report.per_image) {
            std::snprintf(buf, sizeof buf, "%s,%s,%.12f\n", row.id.c_str(), row.method.c_str(),
                          row.accuracy);
            out << buf;
        }
        if (!out) throw IoError("short write: per_image.csv");
    }
    {
        std::ofstream out(out_dir + "/summary.csv");
        if (!out) throw IoError("cannot open summary.csv");
        out << "method,average,variance,max,min,gp_relative_increase\n";
        for (const auto& s : report.summary) {
            std::snprintf(buf, sizeof buf, "%s,%.12f,%.12f,%.12f,%.12f,", s.method.c_str(), s.average,
                          s.variance, s.max, s.min);
            out << buf;
            if (s.has_gain) {
                std::snprintf(buf, sizeof buf, "%.12f\n", s.gain);
                out << buf;
            } else {
                out << "N/A\n";
            }
        }
        if (!out) throw IoError("short write: summary.csv");
    }

    // accuracy per image, one series per method
    std::size_t n_entries = 0;
    for (const auto& row : report.per_image)
        if (row.method == report.summary.front().method) ++n_entries;
    {
        SvgPlot plot(900, 420, "per-image OCR accuracy");
        plot.set_range(0.0, std::max<double>(1.0, static_cast<double>(n_entries) - 1.0), 0.0, 1.0);
        const char* colors[] = {"#3060c0", "#c04030", "#808080"};
        int ci = 0;
        for (const auto& s : report.summary) {
            std::vector<std::pair<double, double>> pts;
            std::size_t idx = 0;
            for (const auto& row : report.per_image)
                if (row.method == s.method) pts.emplace_back(static_cast<double>(idx++), row.accuracy);
            const std::string color = colors[ci++ % 3];
            plot.polyline(pts, color, 2.0, s.method);
            for (const auto& [x, y] : pts) plot.point(x, y, color, 2.5);
        }
        plot.write(out_dir + "/accuracy.svg");
    }

    // per-image relative gain of gp over bicubic, when both are present
    {
        std::vector<double> gp_acc, bc_acc;
        for (const auto& row : report.per_image) {
            if (row.method == "gp") gp_acc.push_back(row.accuracy);
            if (row.method == "bicubic") bc_acc.push_back(row.accuracy);
        }
        SvgPlot plot(900, 420, "per-image relative gain: gp vs bicubic");
        std::vector<std::pair<double, double>> pts;
        double lo = 0.0, hi = 0.0;
        if (gp_acc.size() == bc_acc.size() && !gp_acc.empty()) {
            for (std::size_t i = 0; i < gp_acc.size(); ++i) {
                if (bc_acc[i] <= 0.0) continue;
                const double g = (gp_acc[i] - bc_acc[i]) / bc_acc[i];
                pts.emplace_back(static_cast<double>(i), g);
                lo = std::min(lo, g);
                hi = std::max(hi, g);
            }
        }
        plot.set_range(0.0, std::max<double>(1.0, static_cast<double>(n_entries) - 1.0),
                       lo - 0.05, hi + 0.05);
        plot.hline(0.0, "#a0a0a0", 1.0);
        plot.polyline(pts, "#208040", 2.0, "relative gain");
        for (const auto& [x, y] : pts) plot.point(x, y, "#208040", 2.5);
        plot.write(out_dir + "/gain.svg");
    }
}

} // namespace gpocr
