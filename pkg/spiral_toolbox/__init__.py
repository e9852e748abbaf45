def main(*args, **kwargs):
    from spiral_toolbox import spiral_toolbox_cli
    return spiral_toolbox_cli.main(*args, **kwargs)
