# Copyright 2026 The qnet-privacy Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Builds the `qnet_privacy._core` extension by delegating to CMake.

Project metadata lives in pyproject.toml; this file only teaches setuptools
how to drive the CMake build and where the resulting module lands.
"""

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
        source_dir = Path(__file__).parent.resolve()
        build_temp = Path(self.build_temp).resolve()
        build_temp.mkdir(parents=True, exist_ok=True)

        subprocess.run(
            [
                "cmake",
                "-S", str(source_dir),
                "-B", str(build_temp),
                "-DCMAKE_BUILD_TYPE=Release",
                f"-DPython_EXECUTABLE={sys.executable}",
                "-DQNET_BUILD_TESTS=OFF",
                "-DQNET_BUILD_PYTHON=ON",
            ],
            check=True,
        )
        subprocess.run(
            ["cmake", "--build", str(build_temp), "--target", "qnet_core", "-j"],
            check=True,
        )

        # The bindings target assembles an importable package under
        # <build>/python/qnet_privacy; lift the extension into the wheel.
        built = next((build_temp / "python" / "qnet_privacy").glob("_core*"))
        dest = Path(self.get_ext_fullpath(ext.name)).resolve()
        dest.parent.mkdir(parents=True, exist_ok=True)
        shutil.copy2(built, dest)


setup(
    packages=["qnet_privacy"],
    package_dir={"qnet_privacy": "python/qnet_privacy"},
    ext_modules=[CMakeExtension("qnet_privacy._core")],
    cmdclass={"build_ext": CMakeBuild},
)
