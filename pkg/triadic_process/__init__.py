# triadic-process
# Copyright (C) 2026 triadic-process authors
#
# All rights reserved.
#
# This file is part of triadic-process.
#
# triadic-process is free software: you can redistribute it and/or modify
# it under the terms of the GNU General Public License as published by
# the Free Software Foundation, either version 3 of the License, or
# (at your option) any later version.
#
# triadic-process is distributed in the hope that it will be useful,
# but WITHOUT ANY WARRANTY; without even the implied warranty of
# MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the
# GNU General Public License for more details.
#
# You should have received a copy of the GNU General Public License
# along with triadic-process.  If not, see <http://www.gnu.org/licenses/>.
__version__ = "0.1"

from .cmd import triadic_cmd  # noqa: E402
