'''
    Functions to retrieve host information.
'''

import platform


def os():
    conf = platform.uname()
    return "%s %s %s (%s)" % (conf[0], conf[2], conf[3], conf[4])


def cpu():
    try:
        from cpuinfo import cpuinfo
        cpu = cpuinfo.get_cpu_info()
        return "%s, %s, %d cores" % (cpu.get("brand_raw", cpu.get("brand", "")), cpu["arch"], cpu["count"])
    except Exception:
        # may be empty on Linux because of partial implemtation in platform
        return platform.processor()


def memory():
    try:
        import psutil
        vm = psutil.virtual_memory()
        return "%.1f GiB total, %.1f GiB available" % (vm.total / 2**30, vm.available / 2**30)
    except Exception:
        return ""


def available_memory():
    '''
    Available memory in bytes, or None if it cannot be determined.
    '''
    try:
        import psutil
        return psutil.virtual_memory().available
    except Exception:
        return None


def libraries():
    result = []
    for name in ('numpy', 'mpmath', 'gmpy2'):
        try:
            module = __import__(name)
            result.append("%s %s" % (name, getattr(module, '__version__', 'unknown')))
        except ImportError:
            result.append("%s missing" % name)
    return ", ".join(result)


def all_host_infos():
    '''
        Summarize all host information.
    '''
    output = []
    output.append(["Operating system", os()])
    output.append(["Python", platform.python_version()])
    output.append(["CPUID information", cpu()])
    output.append(["Memory", memory()])
    output.append(["Numerical libraries", libraries()])
    return output
