import pbr.version

version_info = pbr.version.VersionInfo('networking-topoid')


def version_string():
    try:
        return version_info.version_string()
    except Exception:
        # not installed, e.g. running from a source tree
        return "unknown"
