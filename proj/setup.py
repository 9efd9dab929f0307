import shutil
import subprocess
import sys
from pathlib import Path

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class CMakeExtension(Extension):
    def __init__(self, name):
        super().__init__(name, sources=[])


class CMakeBuild(build_ext):
    def build_extension(self, ext):
        source = Path(__file__).resolve().parent
        build = Path(self.build_temp).resolve()
        build.mkdir(parents=True, exist_ok=True)
        out = Path(self.get_ext_fullpath(ext.name)).resolve().parent
        subprocess.run(
            [
                "cmake",
                "-S", str(source),
                "-B", str(build),
                "-DCMAKE_BUILD_TYPE=Release",
                "-DARTSSL_BUILD_CLI=OFF",
                "-DARTSSL_BUILD_TESTS=OFF",
                f"-DPython3_EXECUTABLE={sys.executable}",
            ],
            check=True,
        )
        subprocess.run(
            ["cmake", "--build", str(build), "--target", "artssl_pymod", "-j"],
            check=True,
        )
        out.mkdir(parents=True, exist_ok=True)
        for lib in (build / "python" / "artssl").glob("_core*"):
            shutil.copy2(lib, out / lib.name)


setup(
    packages=["artssl"],
    package_dir={"artssl": "python/artssl"},
    ext_modules=[CMakeExtension("artssl._core")],
    cmdclass={"build_ext": CMakeBuild},
)
