# Copyright 2022 The Oddindex Authors
#
# This file is part of Oddindex.
#
# Licensed under the GNU Affero General Public License 3.0 (the "License").
# A copy of the License may be obtained with this software package or at
#
#      https://www.gnu.org/licenses/agpl-3.0.en.html
#
# Use of this file is prohibited except in compliance with the License. Any
# modifications or derivative works of this file must retain this copyright
# notice, and modified files must contain a notice indicating that they have
# been altered from the originals.
#
# Oddindex is distributed in the hope that it will be useful, but WITHOUT
# ANY WARRANTY; without even the implied warranty of MERCHANTABILITY or
# FITNESS FOR A PARTICULAR PURPOSE. See the License for more details.

"""Oddindex CLI Tool."""

import click

from .commands import index_command, jlo, localize, mehler, series, spectral


# Main entrypoint
@click.group(invoke_without_command=True)
@click.option("-v", "--version", is_flag=True, help="Display version information.")
@click.pass_context
def cli(ctx: click.Context, version: bool) -> None:
    """
    Oddindex CLI tool for fixed-point index and heat-kernel checks.
    """
    if version:
        from oddindex import __version__

        click.echo("oddindex:  Odd-dimensional Lefschetz Index Toolkit")
        click.echo("Copyright (C) 2022 The Oddindex Authors")
        click.echo(f"Release version {__version__}")
    elif ctx.invoked_subcommand is None:
        # Display the help menu if no command was provided
        ctx = click.get_current_context()
        click.echo(ctx.get_help())


cli.add_command(index_command)
cli.add_command(spectral)
cli.add_command(jlo)
cli.add_command(mehler)
cli.add_command(localize)
cli.add_command(series)

if __name__ == "__main__":
    cli()
